// ioutil.hpp -- small file helpers.

#pragma once

#include <string>

namespace klq {

// Writes content to path via a temp file in the same directory plus rename,
// so readers never observe a partial file. Throws Errc::io_error.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);  // throws Errc::io_error

}  // namespace klq
