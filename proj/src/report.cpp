// Copyright 2026 The uqsd Authors
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

#include "uqsd/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include "uqsd/tolerances.hpp"

namespace uqsd::report {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

unsigned parse_unsigned(std::string_view text) {
    text = trim(text);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("not a nonnegative integer: '" + std::string(text) + "'");
    }
    return value;
}

/// Imaginary coefficient of "<x>i"; bare "i", "+i", "-i" are +-1.
double imaginary_coefficient(std::string_view coeff) {
    coeff = trim(coeff);
    if (coeff.empty() || coeff == "+") return 1.0;
    if (coeff == "-") return -1.0;
    return parse_double(coeff);
}

}  // namespace

std::string fixed(double value, int decimals) {
    // Avoid "-0.000000" for values that round to zero.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string out(buf);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

void write_table_csv(std::ostream &os, const std::vector<OptimumRow> &rows) {
    os << kTableHeader << '\n';
    for (const auto &r : rows) {
        os << r.m << ',' << fixed(r.kappa_star) << ',' << fixed(r.p_in) << ',' << fixed(r.p_b)
           << ',' << fixed(r.p_c) << ',' << fixed(r.p_s) << '\n';
    }
}

void write_sweep_csv(std::ostream &os, const SweepCurve &curve) {
    os << kSweepHeader << '\n';
    for (const auto &p : curve.points) {
        os << fixed(p.kappa) << ',' << fixed(p.p_b) << ',' << fixed(p.p_c) << ',' << fixed(p.p_in)
           << ',' << fixed(p.p_s) << '\n';
    }
}

json to_json(const OperatorMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

OperatorMatrix matrix_from_json(const json &j) {
    try {
        const auto rows = j.at("rows").get<std::size_t>();
        const auto cols = j.at("cols").get<std::size_t>();
        const auto &re = j.at("re");
        const auto &im = j.at("im");
        if (re.size() != rows || im.size() != rows) throw ParseError("matrix: row count mismatch");
        OperatorMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            if (re[i].size() != cols || im[i].size() != cols) {
                throw ParseError("matrix: column count mismatch");
            }
            for (std::size_t jj = 0; jj < cols; ++jj) {
                m(i, jj) = Complex(re[i][jj].get<double>(), im[i][jj].get<double>());
            }
        }
        return m;
    } catch (const json::exception &e) {
        throw ParseError(std::string("matrix: ") + e.what());
    }
}

json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const SystemParams &p) {
    json j = {{"theta", p.theta},
              {"kappa", p.kappa},
              {"alpha", to_json(p.alpha)},
              {"beta", to_json(p.beta)}};
    j["m"] = p.m ? json(*p.m) : json(nullptr);
    return j;
}

json to_json(const OptimumRow &row) {
    return {{"m", row.m},     {"kappa", row.kappa_star}, {"p_in", row.p_in},
            {"p_b", row.p_b}, {"p_c", row.p_c},          {"p_s", row.p_s}};
}

json to_json(const DiscriminationReport &r) {
    return {{"p_b", r.p_b},
            {"p_c", r.p_c},
            {"p_in", r.p_in},
            {"p_s", r.p_s},
            {"q1", r.q1},
            {"q2", r.q2},
            {"params", to_json(r.params)}};
}

json to_json(const TrialStats &s) {
    auto by_outcome = [&](Preparation prep) {
        return json{{"a", s.count(prep, AtomLevel::a)},
                    {"b", s.count(prep, AtomLevel::b)},
                    {"c", s.count(prep, AtomLevel::c)}};
    };
    return {
        {"n_trials", s.n_trials},
        {"counts",
         {{"psi1", by_outcome(Preparation::psi1)}, {"psi2", by_outcome(Preparation::psi2)}}},
        {"rates", {{"p_b", s.p_b()}, {"p_c", s.p_c()}, {"p_in", s.p_in()}, {"p_s", s.p_s()}}},
        {"standard_errors",
         {{"p_b", s.standard_error(s.p_b())},
          {"p_c", s.standard_error(s.p_c())},
          {"p_in", s.standard_error(s.p_in())},
          {"p_s", s.standard_error(s.p_s())}}},
    };
}

json to_json(const AuditVerdict &v) {
    return {{"verdict", v.pass ? "PASS" : "FAIL"},
            {"b_given_psi2", v.b_given_psi2},
            {"c_given_psi1", v.c_given_psi1}};
}

std::string pretty(const OperatorMatrix &m, int precision) {
    std::ostringstream os;
    char buf[128];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex z = m(i, j);
            const double tiny = 0.5 * std::pow(10.0, -precision);
            const double re = std::abs(z.real()) < tiny ? 0.0 : z.real();
            const double im = std::abs(z.imag()) < tiny ? 0.0 : z.imag();
            std::snprintf(buf, sizeof buf, " %+.*f%+.*fi", precision, re, precision, im);
            os << buf;
        }
        os << " ]\n";
    }
    return os.str();
}

RunManifest make_manifest(std::string command, json parameters) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);

    json tolerances = {
        {"unitarity", tol::kUnitarity},
        {"hermiticity", tol::kHermiticity},
        {"psd", tol::kPsd},
        {"completeness", tol::kCompleteness},
        {"unambiguity", tol::kUnambiguity},
        {"probability_sum", tol::kProbabilitySum},
        {"analytic_columns", tol::kAnalyticColumns},
    };
    return RunManifest{std::move(command), std::move(parameters), UQSD_VERSION,
                       std::move(tolerances), stamp};
}

json to_json(const RunManifest &m) {
    return {{"command", m.command},
            {"parameters", m.parameters},
            {"version", m.version},
            {"tolerances", m.tolerances},
            {"timestamp", m.timestamp}};
}

std::string manifest_path(const std::string &output) { return output + ".manifest.json"; }

std::vector<std::pair<std::string, std::string>> parse_config(std::istream &is) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const auto key = trim(body.substr(0, eq));
        const auto value = trim(body.substr(eq + 1));
        if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
        entries.emplace_back(std::string(key), std::string(value));
    }
    return entries;
}

Complex parse_complex(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty complex number");
    if (text.front() == '(') {
        if (text.back() != ')') throw ParseError("unterminated complex pair");
        const auto inner = text.substr(1, text.size() - 2);
        const auto comma = inner.find(',');
        if (comma == std::string_view::npos) throw ParseError("complex pair needs a comma");
        return {parse_double(inner.substr(0, comma)), parse_double(inner.substr(comma + 1))};
    }
    if (text.back() != 'i') return {parse_double(text), 0.0};

    const auto body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not a leading sign or part of an exponent.
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            return {parse_double(body.substr(0, k)), imaginary_coefficient(body.substr(k))};
        }
    }
    return {0.0, imaginary_coefficient(body)};
}

KappaRange parse_kappa_range(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ParseError("kappa range must be lo:hi:step");
    return {parse_double(text.substr(0, c1)), parse_double(text.substr(c1 + 1, c2 - c1 - 1)),
            parse_double(text.substr(c2 + 1))};
}

std::vector<unsigned> parse_m_list(std::string_view text) {
    std::vector<unsigned> ms;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(
            start, comma == std::string_view::npos ? text.size() - start : comma - start);
        ms.push_back(parse_unsigned(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return ms;
}

}  // namespace uqsd::report
