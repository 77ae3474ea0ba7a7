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

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "yule/kernel.hpp"

namespace yule {

/// {"n": n, "build_mode": "...", "eigenvalues": [...]}
std::string kernel_to_json(const KernelContext& ctx);
KernelContext kernel_from_json(const std::string& text);

/// kernel_<n>.json
std::string kernel_cache_filename(int n);

void save_kernel(const KernelContext& ctx, const std::filesystem::path& file);
KernelContext load_kernel(const std::filesystem::path& file);

/// Process-wide shared context for n. When YULE_CACHE_DIR is set, spectra
/// are read from (or written to) kernel_<n>.json in that directory; a cached
/// file with a different build mode is ignored.
std::shared_ptr<const KernelContext> shared_kernel(int n, BuildMode mode = BuildMode::explicit_formula);

}  // namespace yule
