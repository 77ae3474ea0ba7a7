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

#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Core>

namespace yule::cli {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string version_string() {
    std::ostringstream s;
    s << "yule 1.0.0; eigen " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION
      << "; compiler " << __VERSION__;
    return s.str();
}

std::string join_command_line(const std::vector<std::string>& args) {
    std::string line = "yule";
    for (const auto& a : args) {
        line += ' ';
        if (a.find_first_of(" \t\"'") == std::string::npos && !a.empty()) {
            line += a;
        } else {
            line += '\'';
            for (char c : a) {
                if (c == '\'')
                    line += "'\\''";
                else
                    line += c;
            }
            line += '\'';
        }
    }
    return line;
}

nlohmann::ordered_json to_json(const RunManifest& m) {
    nlohmann::ordered_json doc;
    doc["schema"] = "yule/1";
    doc["kind"] = "manifest";
    doc["command_line"] = m.command_line;
    doc["args"] = m.args;
    doc["config"] = m.config;
    doc["versions"] = m.versions;
    doc["seed"] = m.seed;
    doc["started"] = m.started;
    doc["finished"] = m.finished;
    doc["outputs"] = m.outputs;
    return doc;
}

RunManifest manifest_from_json(const nlohmann::json& doc) {
    try {
        RunManifest m;
        m.args = doc.at("args").get<std::vector<std::string>>();
        m.command_line = doc.value("command_line", join_command_line(m.args));
        m.config = nlohmann::ordered_json::parse(doc.value("config", nlohmann::json::object()).dump());
        m.versions = doc.value("versions", "");
        m.seed = doc.value("seed", std::uint64_t{0});
        m.started = doc.value("started", "");
        m.finished = doc.value("finished", "");
        m.outputs = doc.value("outputs", std::vector<std::string>{});
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed manifest: ") + e.what());
    }
}

void write_manifest(const RunManifest& m, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write manifest " + file.string());
    out << to_json(m).dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot read manifest " + file.string());
    try {
        return manifest_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed manifest: ") + e.what());
    }
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
    return std::filesystem::path(output.string() + ".manifest.json");
}

}  // namespace yule::cli
