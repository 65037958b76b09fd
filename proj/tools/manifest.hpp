// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

namespace mmcoex::cli {

/// Lower-case hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

/// Current UTC time as yyyy-mm-ddThh:mm:ssZ.
std::string utc_timestamp();

} // namespace mmcoex::cli
