// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "proxdual/image.hpp"
#include "proxdual/solver.hpp"
#include "proxdual/vec.hpp"

namespace proxdual::io {

/// I/O failures carry a short description; parse errors include positions.
struct IoError : Error {
  using Error::Error;
};

/// Reads a P2 (ASCII) or P5 (binary) image with maxval 255 or 65535 into
/// [0,1] doubles (value / maxval). Only square images are representable.
/// P5 16-bit samples are big-endian.
ImageGrid read_pgm(const std::string& path, int* maxval_out = nullptr);

/// Clamps to [0,1], quantizes by rounding to maxval steps, and writes P5
/// (binary) or P2 (ASCII). read(write(read(p))) is the identity on the
/// quantized values.
void write_pgm(const std::string& path, const ImageGrid& img, int maxval, bool binary = true);

/// One real per line, or a single comma-separated line (both accepted on
/// read; writes use one value per line at 17 significant digits, which
/// round-trips doubles exactly).
VecR read_vector_csv(const std::string& path);
void write_vector_csv(const std::string& path, const VecR& v);

/// One comma-separated row per line.
std::vector<VecR> read_matrix_csv(const std::string& path);

/// Header: n,iterate_change,primal_obj,dual_obj,gap,wall_time_ms.
/// Unavailable fields are left empty.
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);

/// Entry point used by the command-line tool; returns the process exit code
/// (0 converged, 1 input error, 2 iteration limit without convergence).
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace proxdual::io
