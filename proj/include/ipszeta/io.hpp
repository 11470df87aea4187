// Copyright 2026 The ipszeta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipszeta/dynamics.hpp"
#include "ipszeta/global_operator.hpp"
#include "ipszeta/models.hpp"
#include "ipszeta/zeta.hpp"
#include "json.hpp"

namespace ipszeta::io {

// Text forms. All parsers throw Error(ParseError) on malformed input.

/// "0.3", "-2j", "0.1+0.2j", "1e-3-4e-2j" (a trailing i is accepted as well).
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

/// A plain number of radians or a multiple of pi: "pi", "-pi/2", "2pi/3", "3*pi/4", "0.25pi".
double parse_angle(std::string_view text);

/// Splits on commas, trimming blanks; empty input gives an empty list.
std::vector<std::string> split_list(std::string_view text);

// JSON. Complex numbers are [re, im] pairs; matrices are arrays of rows.
// Matrix parsing also accepts a flat row-major list of n*n entries and
// plain real numbers in place of pairs.

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json &j);
nlohmann::json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const nlohmann::json &j, Eigen::Index n);

/// {"model": "dk"|"gdk"|"qca1"|"qca2"|"tensor"|"custom", "params": [...]}.
/// Angles may be numbers or strings understood by parse_angle. Tensor params
/// are [left, right]; custom params are the 4x4 matrix itself.
ModelSpec model_from_json(const nlohmann::json &j);
nlohmann::json model_to_json(const ModelSpec &spec);

nlohmann::json model_class_to_json(const ModelClass &c);
nlohmann::json state_to_json(const StateVector &state);

// CSV.

/// r,trace_re,trace_im,c_r_re,c_r_im
std::string trace_sequence_csv(const TraceSequence &seq);
/// r,coeff_re,coeff_im
std::string series_csv(const ZetaLogSeries &series);
/// idx,re,im,abs
std::string spectrum_csv(std::span<const Complex> eigenvalues);
/// step,site_0,...,site_{N-1}
std::string trajectory_csv(const std::vector<std::vector<double>> &rows);

}  // namespace ipszeta::io
