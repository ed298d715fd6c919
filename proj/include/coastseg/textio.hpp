#pragma once

#include <string>

namespace coastseg {

// Whole-file text helpers shared by every writer in the toolkit. Writes go
// through a temp file + rename so partially written outputs never appear
// under the target name. Failures throw std::runtime_error with the path.
std::string read_text_file(const std::string& path);
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace coastseg
