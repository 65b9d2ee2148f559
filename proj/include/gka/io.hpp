#pragma once

#include <array>
#include <string>
#include <vector>

#include "gka/grid.hpp"

namespace gka {

// Shortest decimal form that round-trips a double (%.17g trimmed).
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

// CSV with columns t,raw,scaled.
void write_norms_csv(const std::string& path,
                     const std::vector<std::array<double, 3>>& rows);

// CSV with columns x1[,x2],value.
void write_field_csv(const std::string& path, const Field& f);

void ensure_directory(const std::string& path);

}  // namespace gka
