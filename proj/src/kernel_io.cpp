/*
   Copyright 2026 The yule Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "yule/kernel_io.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace yule {

using nlohmann::json;

std::string kernel_to_json(const KernelContext& ctx) {
    json doc;
    doc["n"] = ctx.n();
    doc["build_mode"] = std::string(to_string(ctx.build_mode()));
    doc["eigenvalues"] = std::vector<double>(ctx.eigenvalues().begin(), ctx.eigenvalues().end());
    return doc.dump();
}

KernelContext kernel_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
        const int n = doc.at("n").get<int>();
        BuildMode mode = BuildMode::spectral;
        if (doc.contains("build_mode")) mode = build_mode_from_string(doc["build_mode"].get<std::string>());
        return KernelContext(n, doc.at("eigenvalues").get<std::vector<double>>(), mode);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed kernel document: ") + e.what());
    }
}

std::string kernel_cache_filename(int n) { return "kernel_" + std::to_string(n) + ".json"; }

void save_kernel(const KernelContext& ctx, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << kernel_to_json(ctx) << '\n';
}

KernelContext load_kernel(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return kernel_from_json(buffer.str());
}

std::shared_ptr<const KernelContext> shared_kernel(int n, BuildMode mode) {
    static std::mutex mutex;
    static std::map<std::pair<int, BuildMode>, std::shared_ptr<const KernelContext>> contexts;
    const auto key = std::make_pair(n, mode);
    {
        std::lock_guard lock(mutex);
        if (auto it = contexts.find(key); it != contexts.end()) return it->second;
    }

    std::shared_ptr<const KernelContext> ctx;
    const char* dir = std::getenv("YULE_CACHE_DIR");
    std::filesystem::path file;
    if (dir != nullptr && *dir != '\0') {
        file = std::filesystem::path(dir) / kernel_cache_filename(n);
        std::error_code ec;
        if (std::filesystem::exists(file, ec)) {
            try {
                auto loaded = std::make_shared<const KernelContext>(load_kernel(file));
                if (loaded->n() == n && loaded->build_mode() == mode) ctx = std::move(loaded);
            } catch (const std::exception&) {
                // unreadable cache entries are rebuilt
            }
        }
    }
    if (!ctx) {
        ctx = std::make_shared<const KernelContext>(n, mode);
        if (!file.empty()) {
            try {
                std::filesystem::create_directories(file.parent_path());
                save_kernel(*ctx, file);
            } catch (const std::exception&) {
            }
        }
    }
    std::lock_guard lock(mutex);
    return contexts.emplace(key, ctx).first->second;
}

}  // namespace yule
