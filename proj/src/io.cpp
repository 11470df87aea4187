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

#include "ipszeta/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "ipszeta/errors.hpp"

namespace ipszeta::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_fail(const std::string &what, std::string_view text) {
    throw Error(ErrorKind::ParseError, what + ": '" + std::string(text) + "'");
}

double parse_number(std::string_view text) {
    const std::string s(trim(text));
    if (s.empty()) parse_fail("empty number", text);
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) parse_fail("not a number", text);
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

double angle_from_json(const nlohmann::json &j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_angle(j.get<std::string>());
    throw Error(ErrorKind::ParseError, "angle must be a number or a string such as \"pi/6\"");
}

std::vector<double> param_list(const nlohmann::json &params, std::size_t expected,
                               std::string_view model, bool angles) {
    if (!params.is_array() || params.size() != expected) {
        std::ostringstream msg;
        msg << "model '" << model << "' takes " << expected << " parameters";
        throw Error(ErrorKind::ParseError, msg.str());
    }
    std::vector<double> out;
    for (const auto &p : params) {
        if (angles) {
            out.push_back(angle_from_json(p));
        } else if (p.is_number()) {
            out.push_back(p.get<double>());
        } else if (p.is_string()) {
            out.push_back(parse_number(p.get<std::string>()));
        } else {
            throw Error(ErrorKind::ParseError, "parameters must be numbers");
        }
    }
    return out;
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) parse_fail("empty complex number", text);
    if (s.back() != 'j' && s.back() != 'i' && s.back() != 'J' && s.back() != 'I') {
        return {parse_number(s), 0.0};
    }
    s.remove_suffix(1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_part = [&](std::string_view part) {
        part = trim(part);
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return parse_number(part);
    };
    if (split == std::string_view::npos) return {0.0, imag_part(s)};
    return {parse_number(s.substr(0, split)), imag_part(s.substr(split))};
}

std::string format_complex(Complex z) {
    std::string out = fmt(z.real());
    const std::string im = fmt(z.imag());
    if (im.front() != '-') out += '+';
    return out + im + "j";
}

double parse_angle(std::string_view text) {
    const std::string_view s = trim(text);
    const std::size_t at = s.find("pi");
    if (at == std::string_view::npos) return parse_number(s);

    std::string_view coef = trim(s.substr(0, at));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    double value = kPi;
    if (coef == "-") {
        value = -kPi;
    } else if (!coef.empty() && coef != "+") {
        value *= parse_number(coef);
    }
    std::string_view rest = trim(s.substr(at + 2));
    if (!rest.empty()) {
        if (rest.front() != '/') parse_fail("angle must look like [c][*]pi[/d]", text);
        const double den = parse_number(rest.substr(1));
        if (den == 0.0) parse_fail("zero denominator in angle", text);
        value /= den;
    }
    return value;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.emplace_back(trim(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json &j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw Error(ErrorKind::ParseError, "complex value must be [re, im], got " + j.dump());
}

nlohmann::json matrix_to_json(const Matrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json &j, Eigen::Index n) {
    const auto nn = static_cast<std::size_t>(n);
    auto fail = [&]() {
        throw Error(ErrorKind::ParseError, "expected a " + std::to_string(n) + "x" +
                                               std::to_string(n) + " matrix, got " + j.dump());
    };
    if (!j.is_array()) fail();
    Matrix m(n, n);
    if (j.size() == nn) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto &row = j[static_cast<std::size_t>(i)];
            if (!row.is_array() || row.size() != nn) fail();
            for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
        }
    } else if (j.size() == nn * nn) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(j[static_cast<std::size_t>(i * n + k)]);
        }
    } else {
        fail();
    }
    return m;
}

ModelSpec model_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("model") || !j["model"].is_string()) {
        throw Error(ErrorKind::ParseError, "model spec needs a \"model\" string");
    }
    const std::string tag = j["model"].get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::array());
    if (tag == "dk") {
        const auto p = param_list(params, 2, tag, false);
        return DkParams{p[0], p[1]};
    }
    if (tag == "gdk") {
        const auto p = param_list(params, 4, tag, true);
        return GeneralizedDkParams{p[0], p[1], p[2], p[3]};
    }
    if (tag == "qca1") {
        const auto p = param_list(params, 2, tag, true);
        return Qca1Params{p[0], p[1]};
    }
    if (tag == "qca2") {
        const auto p = param_list(params, 2, tag, true);
        return Qca2Params{p[0], p[1]};
    }
    if (tag == "tensor") {
        nlohmann::json left, right;
        if (j.contains("left") && j.contains("right")) {
            left = j["left"];
            right = j["right"];
        } else if (params.is_array() && params.size() == 2) {
            left = params[0];
            right = params[1];
        } else {
            throw Error(ErrorKind::ParseError, "tensor model takes params [left, right]");
        }
        return TensorParams{matrix_from_json(left, 2), matrix_from_json(right, 2)};
    }
    if (tag == "custom") {
        const nlohmann::json &m = j.contains("matrix") ? j["matrix"] : params;
        return CustomParams{matrix_from_json(m, 4)};
    }
    throw Error(ErrorKind::ParseError, "unknown model '" + tag + "'");
}

nlohmann::json model_to_json(const ModelSpec &spec) {
    nlohmann::json j;
    j["model"] = std::string(model_tag(spec));
    if (const auto *dk = std::get_if<DkParams>(&spec)) {
        j["params"] = {dk->p, dk->q};
    } else if (const auto *g = std::get_if<GeneralizedDkParams>(&spec)) {
        j["params"] = {g->xi1, g->xi2, g->xi3, g->xi4};
    } else if (const auto *q1 = std::get_if<Qca1Params>(&spec)) {
        j["params"] = {q1->xi1, q1->xi2};
    } else if (const auto *q2 = std::get_if<Qca2Params>(&spec)) {
        j["params"] = {q2->xi1, q2->xi2};
    } else if (const auto *t = std::get_if<TensorParams>(&spec)) {
        j["params"] = {matrix_to_json(t->left), matrix_to_json(t->right)};
    } else if (const auto *c = std::get_if<CustomParams>(&spec)) {
        j["params"] = matrix_to_json(c->matrix);
    }
    return j;
}

nlohmann::json model_class_to_json(const ModelClass &c) {
    nlohmann::json j;
    j["is_pca"] = c.is_pca;
    j["is_qca"] = c.is_qca;
    j["is_ca"] = c.is_ca;
    j["tensor_factorizable"] = c.tensor_factorizable();
    if (c.factors) {
        j["factors"] = {{"left", matrix_to_json(c.factors->left)},
                        {"right", matrix_to_json(c.factors->right)}};
    } else {
        j["factors"] = nullptr;
    }
    return j;
}

nlohmann::json state_to_json(const StateVector &state) {
    nlohmann::json comps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < state.components.size(); ++i) {
        comps.push_back(complex_to_json(state.components[i]));
    }
    return {{"n_sites", state.n_sites},
            {"kind", std::string(state_kind_name(state.kind))},
            {"time_step", state.time_step},
            {"components", comps}};
}

std::string trace_sequence_csv(const TraceSequence &seq) {
    std::ostringstream os;
    os << "r,trace_re,trace_im,c_r_re,c_r_im\n";
    for (int r = 1; r <= seq.r_max(); ++r) {
        os << r << ',' << fmt(seq.trace(r).real()) << ',' << fmt(seq.trace(r).imag()) << ','
           << fmt(seq.c(r).real()) << ',' << fmt(seq.c(r).imag()) << '\n';
    }
    return os.str();
}

std::string series_csv(const ZetaLogSeries &series) {
    std::ostringstream os;
    os << "r,coeff_re,coeff_im\n";
    for (int r = 1; r <= series.truncation_order(); ++r) {
        os << r << ',' << fmt(series.coefficient(r).real()) << ','
           << fmt(series.coefficient(r).imag()) << '\n';
    }
    return os.str();
}

std::string spectrum_csv(std::span<const Complex> eigenvalues) {
    std::ostringstream os;
    os << "idx,re,im,abs\n";
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        const Complex z = eigenvalues[i];
        os << i << ',' << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(std::abs(z)) << '\n';
    }
    return os.str();
}

std::string trajectory_csv(const std::vector<std::vector<double>> &rows) {
    std::ostringstream os;
    os << "step";
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    for (std::size_t x = 0; x < n; ++x) os << ",site_" << x;
    os << '\n';
    for (std::size_t step = 0; step < rows.size(); ++step) {
        os << step;
        for (double p : rows[step]) os << ',' << fmt(p);
        os << '\n';
    }
    return os.str();
}

}  // namespace ipszeta::io
