// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace proxdual::io {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_pnm_token(std::istream& in, const std::string& path) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) continue;
    tok.push_back(static_cast<char>(c));
    while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
      tok.push_back(static_cast<char>(in.get()));
    return tok;
  }
  throw IoError(path + ": truncated header");
}

int parse_pnm_int(std::istream& in, const std::string& path, const char* what) {
  std::string tok = next_pnm_token(in, path);
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError(path + ": malformed " + what + " '" + tok + "'");
  }
}

}  // namespace

ImageGrid read_pgm(const std::string& path, int* maxval_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open");
  std::string magic = next_pnm_token(in, path);
  if (magic != "P2" && magic != "P5")
    throw IoError(path + ": unsupported magic '" + magic + "' (want P2 or P5)");
  int w = parse_pnm_int(in, path, "width");
  int h = parse_pnm_int(in, path, "height");
  int maxval = parse_pnm_int(in, path, "maxval");
  if (w <= 0 || h <= 0) throw IoError(path + ": non-positive dimensions");
  if (w != h) throw IoError(path + ": image is " + std::to_string(w) + "x" + std::to_string(h) +
                            ", only square images are supported");
  if (maxval != 255 && maxval != 65535)
    throw IoError(path + ": maxval must be 255 or 65535, got " + std::to_string(maxval));
  ImageGrid img(w);
  const size_t count = static_cast<size_t>(w) * h;
  if (magic == "P2") {
    for (size_t i = 0; i < count; ++i) {
      int v = parse_pnm_int(in, path, "pixel");
      if (v < 0 || v > maxval)
        throw IoError(path + ": pixel value " + std::to_string(v) + " out of range");
      img.px[i] = static_cast<double>(v) / maxval;
    }
  } else {
    int c = in.get();  // single whitespace after maxval
    if (c == EOF) throw IoError(path + ": truncated payload");
    const int bytes = maxval > 255 ? 2 : 1;
    std::string buf(count * static_cast<size_t>(bytes), '\0');
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (static_cast<size_t>(in.gcount()) != buf.size())
      throw IoError(path + ": truncated payload");
    for (size_t i = 0; i < count; ++i) {
      unsigned v;
      if (bytes == 1) {
        v = static_cast<unsigned char>(buf[i]);
      } else {
        v = (static_cast<unsigned>(static_cast<unsigned char>(buf[2 * i])) << 8) |
            static_cast<unsigned>(static_cast<unsigned char>(buf[2 * i + 1]));
      }
      if (v > static_cast<unsigned>(maxval))
        throw IoError(path + ": pixel value " + std::to_string(v) + " out of range");
      img.px[i] = static_cast<double>(v) / maxval;
    }
  }
  if (maxval_out) *maxval_out = maxval;
  return img;
}

void write_pgm(const std::string& path, const ImageGrid& img, int maxval, bool binary) {
  if (maxval != 255 && maxval != 65535)
    throw IoError(path + ": maxval must be 255 or 65535");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << (binary ? "P5" : "P2") << "\n" << img.n << " " << img.n << "\n" << maxval << "\n";
  const size_t count = img.px.size();
  if (binary) {
    std::string buf;
    buf.reserve(count * (maxval > 255 ? 2 : 1));
    for (size_t i = 0; i < count; ++i) {
      double clamped = std::min(1.0, std::max(0.0, img.px[i]));
      unsigned v = static_cast<unsigned>(std::lround(clamped * maxval));
      if (maxval > 255) {
        buf.push_back(static_cast<char>((v >> 8) & 0xff));
        buf.push_back(static_cast<char>(v & 0xff));
      } else {
        buf.push_back(static_cast<char>(v & 0xff));
      }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  } else {
    for (int k = 0; k < img.n; ++k) {
      for (int l = 0; l < img.n; ++l) {
        double clamped = std::min(1.0, std::max(0.0, img.at(k, l)));
        out << static_cast<long>(std::lround(clamped * maxval)) << (l + 1 < img.n ? ' ' : '\n');
      }
    }
  }
  if (!out) throw IoError(path + ": write failed");
}

VecR read_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::vector<double> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      size_t b = cell.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      size_t e = cell.find_last_not_of(" \t\r");
      std::string tok = cell.substr(b, e - b + 1);
      char* end = nullptr;
      double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
        throw IoError(path + ":" + std::to_string(lineno) + ": bad number '" + tok + "'");
      vals.push_back(v);
    }
  }
  if (vals.empty()) throw IoError(path + ":1: no values found");
  return VecR::from(std::move(vals));
}

void write_vector_csv(const std::string& path, const VecR& v) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  char buf[64];
  for (int i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    out << buf << "\n";
  }
  if (!out) throw IoError(path + ": write failed");
}

std::vector<VecR> read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::vector<VecR> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      size_t b = cell.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      size_t e = cell.find_last_not_of(" \t\r");
      std::string tok = cell.substr(b, e - b + 1);
      char* end = nullptr;
      double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
        throw IoError(path + ":" + std::to_string(lineno) + ": bad number '" + tok + "'");
      vals.push_back(v);
    }
    if (!vals.empty()) rows.push_back(VecR::from(std::move(vals)));
  }
  if (rows.empty()) throw IoError(path + ":1: no rows found");
  for (const VecR& r : rows)
    if (r.size() != rows[0].size())
      throw IoError(path + ": ragged rows");
  return rows;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "n,iterate_change,primal_obj,dual_obj,gap,wall_time_ms\n";
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const TraceRow& row : trace) {
    out << row.n << "," << fmt(row.iterate_change) << ",";
    if (row.primal_obj && std::isfinite(*row.primal_obj)) out << fmt(*row.primal_obj);
    out << ",";
    if (row.dual_obj && std::isfinite(*row.dual_obj)) out << fmt(*row.dual_obj);
    out << ",";
    if (row.gap) out << fmt(*row.gap);
    out << "," << fmt(row.wall_time_ms) << "\n";
  }
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace proxdual::io
