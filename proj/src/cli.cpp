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


#include "ipszeta/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ipszeta/dynamics.hpp"
#include "ipszeta/errors.hpp"
#include "ipszeta/global_operator.hpp"
#include "ipszeta/io.hpp"
#include "ipszeta/models.hpp"
#include "ipszeta/verify.hpp"
#include "ipszeta/zeta.hpp"
#include "json.hpp"

namespace ipszeta {

namespace {

using nlohmann::json;

constexpr const char *kFooter = R"(Formats:
  complex numbers   re+imj on the command line ("0.5", "-0.2j", "0.1+0.3j"),
                    [re, im] pairs in JSON
  angles            radians or multiples of pi ("pi/6", "-pi/2", "2pi/3")
  --n               one size ("6") or a range ("5..8", verify only)
  --params          dk: p,q   gdk: xi1,xi2,xi3,xi4   qca1/qca2: xi1,xi2
                    tensor: 8 complex entries, left 2x2 then right 2x2, row-major
  --matrix          custom: 16 complex entries row-major, or a JSON matrix
  --config FILE     JSON object with the same keys as the long flags
                    (model, params, matrix, n, rmax, u, tol, format, out, steps,
                    init, kind, table); flags override the file

Exit codes: 0 success, 1 runtime error, 2 invalid input, 3 verification failed.)";

struct Flags {
    std::map<std::string, std::string> values;
};

[[noreturn]] void bad_input(const std::string &msg) { throw Error(ErrorKind::ParseError, msg); }

/// File settings overlaid with command-line flags.
class Settings {
   public:
    Settings(json file, std::map<std::string, std::string> flags)
        : file_(std::move(file)), flags_(std::move(flags)) {}

    bool has(const std::string &key) const { return flags_.count(key) || file_.contains(key); }

    /// The raw value; flags arrive as strings.
    json get(const std::string &key) const {
        if (auto it = flags_.find(key); it != flags_.end()) return it->second;
        return file_.at(key);
    }

    std::string string(const std::string &key, const std::string &fallback) const {
        if (!has(key)) return fallback;
        const json v = get(key);
        if (!v.is_string()) bad_input("--" + key + " must be a string");
        return v.get<std::string>();
    }

    std::optional<int> integer(const std::string &key) const {
        if (!has(key)) return std::nullopt;
        const json v = get(key);
        if (v.is_number_integer()) return v.get<int>();
        if (v.is_string()) return parse_int(v.get<std::string>(), key);
        bad_input("--" + key + " must be an integer");
    }

    std::optional<double> real(const std::string &key) const {
        if (!has(key)) return std::nullopt;
        const json v = get(key);
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
            const Complex z = io::parse_complex(v.get<std::string>());
            if (z.imag() != 0.0) bad_input("--" + key + " must be real");
            return z.real();
        }
        bad_input("--" + key + " must be a number");
    }

    /// "6", "5..8", 6, or [5, 8].
    std::optional<std::pair<int, int>> range(const std::string &key) const {
        if (!has(key)) return std::nullopt;
        const json v = get(key);
        if (v.is_number_integer()) return std::pair{v.get<int>(), v.get<int>()};
        if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
            return std::pair{v[0].get<int>(), v[1].get<int>()};
        }
        if (!v.is_string()) bad_input("--" + key + " must be an integer or a range a..b");
        const std::string s = v.get<std::string>();
        const auto dots = s.find("..");
        if (dots == std::string::npos) {
            const int n = parse_int(s, key);
            return std::pair{n, n};
        }
        return std::pair{parse_int(s.substr(0, dots), key), parse_int(s.substr(dots + 2), key)};
    }

    /// Comma-separated string or JSON array, as a JSON array of strings/values.
    json list(const std::string &key) const {
        if (!has(key)) return json::array();
        const json v = get(key);
        if (v.is_array()) return v;
        if (v.is_string()) {
            json a = json::array();
            for (const auto &item : io::split_list(v.get<std::string>())) a.push_back(item);
            return a;
        }
        return json::array({v});
    }

   private:
    static int parse_int(const std::string &text, const std::string &key) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(text, &used);
            if (used == text.size()) return n;
        } catch (const std::exception &) {
        }
        bad_input("--" + key + ": '" + text + "' is not an integer");
    }

    json file_;
    std::map<std::string, std::string> flags_;
};

ModelSpec model_spec(const Settings &s) {
    if (!s.has("model")) bad_input("--model is required");
    json spec;
    spec["model"] = s.string("model", "");
    const std::string tag = spec["model"];
    if (tag == "custom") {
        if (!s.has("matrix")) bad_input("the custom model needs --matrix");
        json m = s.get("matrix");
        if (m.is_string()) {
            const std::string text = m.get<std::string>();
            if (text.find('[') != std::string::npos) {
                try {
                    m = json::parse(text);
                } catch (const json::exception &e) {
                    bad_input(std::string("--matrix: ") + e.what());
                }
            } else {
                m = s.list("matrix");
            }
        }
        spec["matrix"] = m;
    } else if (tag == "tensor") {
        const json p = s.list("params");
        if (p.is_array() && p.size() == 8) {
            spec["params"] = {json(p.begin(), p.begin() + 4), json(p.begin() + 4, p.end())};
        } else {
            spec["params"] = p;
        }
    } else {
        spec["params"] = s.list("params");
    }
    return io::model_from_json(spec);
}

std::vector<Complex> u_points(const Settings &s) {
    std::vector<Complex> us;
    for (const json &item : s.list("u")) us.push_back(io::complex_from_json(item));
    return us;
}

int single_n(const Settings &s, const char *command) {
    const auto n = s.range("n");
    if (!n) bad_input(std::string(command) + " needs --n");
    if (n->first != n->second) bad_input(std::string(command) + " takes a single --n");
    return n->first;
}

std::string format_of(const Settings &s, const std::string &fallback) {
    const std::string f = s.string("format", fallback);
    if (f != "json" && f != "csv") bad_input("--format must be json or csv");
    return f;
}

Tolerances tolerances(const Settings &s) {
    Tolerances t = kDefaultTolerances;
    if (auto tol = s.real("tol")) t.classify = *tol;
    return t;
}

struct Output {
    std::string text;
    int code = kExitOk;
};

// ---------------------------------------------------------------------------

Output cmd_validate(const Settings &s) {
    if (format_of(s, "json") != "json") bad_input("validate reports JSON only");
    const ModelSpec spec = model_spec(s);
    const LocalOperator local = build_local(spec);
    json j = io::model_to_json(spec);
    j["matrix"] = io::matrix_to_json(local.matrix());
    j["classification"] = io::model_class_to_json(classify(local, tolerances(s).classify));
    for (auto &[k, v] : j["classification"].items()) j[k] = v;
    return {j.dump(2) + "\n"};
}

Output cmd_zeta(const Settings &s) {
    const std::string format = format_of(s, "csv");
    const GlobalOperator op(single_n(s, "zeta"), build_local(model_spec(s)));
    const int r_max = s.integer("rmax").value_or(kDefaultSeriesOrder);
    const std::string table = s.string("table", "traces");
    if (table != "traces" && table != "series") bad_input("--table must be traces or series");
    const std::vector<Complex> us = u_points(s);

    const TraceSequence traces = trace_powers(op, r_max);
    const ZetaLogSeries series = zeta_log_series(traces);

    std::optional<std::vector<Complex>> spectrum;
    if (!us.empty() && op.fits_dense()) spectrum = eigenvalues(op);

    struct Evaluation {
        Complex u, truncated;
        std::optional<Complex> exact;
        std::string error;
    };
    std::vector<Evaluation> evals;
    for (const Complex &u : us) {
        Evaluation e{u, series.evaluate(u), std::nullopt, ""};
        if (spectrum) {
            try {
                e.exact = log_det_factor(*spectrum, u);
            } catch (const Error &err) {
                e.error = err.what();
            }
        } else {
            e.error = "operator too large for the eigenvalue route";
        }
        evals.push_back(std::move(e));
    }

    if (format == "csv") {
        std::string text = table == "traces" ? io::trace_sequence_csv(traces) : io::series_csv(series);
        if (!evals.empty()) {
            std::ostringstream os;
            os << std::setprecision(17);
            os << "\nu_re,u_im,series_re,series_im,eigen_re,eigen_im,abs_diff\n";
            for (const auto &e : evals) {
                os << e.u.real() << ',' << e.u.imag() << ',' << e.truncated.real() << ','
                   << e.truncated.imag() << ',';
                if (e.exact) {
                    os << e.exact->real() << ',' << e.exact->imag() << ',' << std::abs(*e.exact - e.truncated);
                } else {
                    os << "nan,nan,nan";
                }
                os << '\n';
            }
            text += os.str();
        }
        return {text};
    }

    json j = io::model_to_json(model_spec(s));
    j["n_sites"] = op.n_sites();
    j["r_max"] = r_max;
    json rows = json::array();
    for (int r = 1; r <= r_max; ++r) {
        rows.push_back({{"r", r},
                        {"trace", io::complex_to_json(traces.trace(r))},
                        {"c_r", io::complex_to_json(traces.c(r))},
                        {"coeff", io::complex_to_json(series.coefficient(r))}});
    }
    j["table"] = rows;
    json ev = json::array();
    for (const auto &e : evals) {
        json item = {{"u", io::complex_to_json(e.u)}, {"series", io::complex_to_json(e.truncated)}};
        if (e.exact) {
            item["eigen"] = io::complex_to_json(*e.exact);
            item["difference"] = std::abs(*e.exact - e.truncated);
        } else {
            item["eigen"] = nullptr;
            item["error"] = e.error;
        }
        ev.push_back(std::move(item));
    }
    j["evaluations"] = ev;
    if (spectrum) j["spectral_radius"] = spectral_radius(*spectrum);
    return {j.dump(2) + "\n"};
}

Output cmd_verify(const Settings &s, const std::string &id) {
    if (format_of(s, "json") != "json") bad_input("verify reports JSON only");
    VerifyOptions opt;
    if (auto n = s.range("n")) {
        opt.n_min = n->first;
        opt.n_max = n->second;
    }
    opt.r_max = s.integer("rmax");
    opt.u_points = u_points(s);
    opt.tolerance = s.real("tol");

    if (id == "all") {
        json reports = json::array();
        bool all_passed = true;
        for (std::string_view fid : formula_ids()) {
            const ClosedFormReport r = verify_formula(fid, opt);
            all_passed = all_passed && r.passed;
            reports.push_back(to_json(r));
        }
        return {reports.dump(2) + "\n", all_passed ? kExitOk : kExitVerificationFailed};
    }
    const ClosedFormReport r = verify_formula(id, opt);
    return {to_json(r).dump(2) + "\n", r.passed ? kExitOk : kExitVerificationFailed};
}

Output cmd_evolve(const Settings &s) {
    const std::string format = format_of(s, "csv");
    const int n = single_n(s, "evolve");
    const GlobalOperator op(n, build_local(model_spec(s)));
    const int steps = s.integer("steps").value_or(1);
    const Configuration init =
        Configuration::parse(s.string("init", std::string(static_cast<std::size_t>(std::max(n - 1, 0)), '0') + "1"));
    if (init.n_sites() != n) {
        throw Error(ErrorKind::DimensionMismatch, "--init has " + std::to_string(init.n_sites()) +
                                                      " sites but --n is " + std::to_string(n));
    }
    const Tolerances tol = tolerances(s);
    StateKind kind;
    const std::string kind_name = s.string("kind", "auto");
    if (kind_name == "pca") {
        kind = StateKind::PcaProbability;
    } else if (kind_name == "qca") {
        kind = StateKind::QcaAmplitude;
    } else if (kind_name == "auto") {
        const ModelClass c = classify(op.local(), tol.classify);
        if (c.is_pca) {
            kind = StateKind::PcaProbability;
        } else if (c.is_qca) {
            kind = StateKind::QcaAmplitude;
        } else {
            throw Error(ErrorKind::KindMismatch, "model is neither PCA nor QCA; nothing to evolve");
        }
    } else {
        bad_input("--kind must be pca, qca or auto");
    }

    const StateVector start = initial_state(init, kind);
    const auto rows = marginal_trajectory(start, op, steps, tol);
    if (format == "csv") return {io::trajectory_csv(rows)};
    const StateVector final_state = evolve(start, op, steps, tol);
    json j = {{"kind", state_kind_name(kind)}, {"n_sites", n}, {"steps", steps},
              {"marginals", rows}, {"final_state", io::state_to_json(final_state)}};
    return {j.dump(2) + "\n"};
}

Output cmd_spectrum(const Settings &s) {
    const std::string format = format_of(s, "csv");
    const GlobalOperator op(single_n(s, "spectrum"), build_local(model_spec(s)));
    const std::vector<Complex> ev = eigenvalues(op);
    if (format == "csv") return {io::spectrum_csv(ev)};
    json list = json::array();
    for (const Complex &z : ev) list.push_back(io::complex_to_json(z));
    json j = {{"n_sites", op.n_sites()}, {"eigenvalues", list}, {"spectral_radius", spectral_radius(ev)}};
    return {j.dump(2) + "\n"};
}

json read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) bad_input("cannot read config file '" + path + "'");
    try {
        json j = json::parse(in);
        if (!j.is_object()) bad_input("config file must hold a JSON object");
        return j;
    } catch (const json::exception &e) {
        bad_input("config file '" + path + "': " + e.what());
    }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Zeta functions and dynamics of two-state interacting particle systems on a path",
                 "ipszeta"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough();

    static const std::vector<std::pair<std::string, std::string>> kFlags = {
        {"model", "dk | gdk | qca1 | qca2 | tensor | custom"},
        {"params", "model parameters, comma separated"},
        {"matrix", "custom 4x4 local operator"},
        {"n", "number of sites N, or a range a..b for verify"},
        {"rmax", "largest power r (zeta default 20)"},
        {"u", "evaluation points, comma separated complex numbers"},
        {"tol", "tolerance override"},
        {"format", "json | csv"},
        {"out", "write the result to this file instead of stdout"},
        {"config", "JSON file with default settings"},
        {"steps", "evolve: number of time steps (default 1)"},
        {"init", "evolve: initial configuration as a bit string, site 0 first"},
        {"kind", "evolve: pca | qca | auto (default auto)"},
        {"table", "zeta CSV table: traces | series (default traces)"},
    };
    std::map<std::string, std::string> raw;
    for (const auto &[name, help] : kFlags) app.add_option("--" + name, raw[name], help);

    std::string formula_id;
    auto *validate = app.add_subcommand("validate", "classify a local operator (JSON)");
    auto *zeta = app.add_subcommand("zeta", "trace sequence, series and zeta evaluations");
    auto *verify = app.add_subcommand("verify", "check a closed form against brute force (JSON)");
    verify->add_option("formula", formula_id, "formula id, or 'all'")->required();
    verify->footer("formula ids: thm5_3 cor5_4 thm5_6 cor5_7 prop6_r1 prop6_r2 prop6_pi2 "
                   "thm6_pi2zeta prop6_rule90_r thm6_rule90zeta conj_rule90");
    auto *evolve = app.add_subcommand("evolve", "site-marginal trajectory from a basis state");
    auto *spectrum = app.add_subcommand("spectrum", "eigenvalues of the global operator");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    std::map<std::string, std::string> given;
    for (const auto &[name, help] : kFlags) {
        if (app.count("--" + name) > 0) given[name] = raw[name];
    }

    try {
        json file = json::object();
        if (given.count("config")) file = read_config(given["config"]);
        const Settings settings(std::move(file), given);

        Output result;
        if (*validate) {
            result = cmd_validate(settings);
        } else if (*zeta) {
            result = cmd_zeta(settings);
        } else if (*verify) {
            result = cmd_verify(settings, formula_id);
        } else if (*evolve) {
            result = cmd_evolve(settings);
        } else if (*spectrum) {
            result = cmd_spectrum(settings);
        }

        const std::string out_path = settings.string("out", "");
        if (out_path.empty()) {
            out << result.text;
        } else {
            std::ofstream file_out(out_path);
            if (!file_out) {
                err << "cannot write '" << out_path << "'\n";
                return kExitRuntimeError;
            }
            file_out << result.text;
        }
        return result.code;
    } catch (const Error &e) {
        err << e.what() << '\n';
        return e.is_input_error() ? kExitInvalidInput : kExitRuntimeError;
    } catch (const json::exception &e) {
        err << "ParseError: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception &e) {
        err << e.what() << '\n';
        return kExitRuntimeError;
    }
}

}  // namespace ipszeta
