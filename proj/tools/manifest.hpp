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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace yule::cli {

/// Provenance record written next to every output file.
struct RunManifest {
    std::vector<std::string> args;  ///< argv without the program name
    std::string command_line;
    nlohmann::ordered_json config;  ///< parsed options of the subcommand
    std::string versions;
    std::uint64_t seed = 0;
    std::string started;   ///< ISO-8601 UTC
    std::string finished;  ///< ISO-8601 UTC
    std::vector<std::string> outputs;
};

std::string utc_timestamp();
std::string version_string();
std::string join_command_line(const std::vector<std::string>& args);

nlohmann::ordered_json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& doc);

void write_manifest(const RunManifest& m, const std::filesystem::path& file);
RunManifest read_manifest(const std::filesystem::path& file);

/// <output>.manifest.json
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

}  // namespace yule::cli
