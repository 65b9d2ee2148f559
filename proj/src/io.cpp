#include "gka/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gka/error.hpp"

namespace gka {

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(ErrorKind::io, "write failed for " + path);
}

void write_norms_csv(const std::string& path,
                     const std::vector<std::array<double, 3>>& rows) {
  std::string body = "t,raw,scaled\n";
  for (const auto& r : rows) {
    body += format_double(r[0]);
    body += ',';
    body += format_double(r[1]);
    body += ',';
    body += format_double(r[2]);
    body += '\n';
  }
  write_text_file(path, body);
}

void write_field_csv(const std::string& path, const Field& f) {
  std::string body = f.grid.dim == 1 ? "x1,value\n" : "x1,x2,value\n";
  double x[2];
  for (std::size_t j = 0; j < f.grid.size(); ++j) {
    f.grid.node_coords(j, x);
    body += format_double(x[0]);
    if (f.grid.dim == 2) {
      body += ',';
      body += format_double(x[1]);
    }
    body += ',';
    body += format_double(f.values[j]);
    body += '\n';
  }
  write_text_file(path, body);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create directory " + path + ": " + ec.message());
}

}  // namespace gka
