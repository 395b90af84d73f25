#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermlat/hermlat.hpp"

namespace hermlat::io {

using json = nlohmann::ordered_json;

inline constexpr const char* format_version = "1";

/// Fixture parse failure; line/column are 1-based and 0 when not applicable.
class parse_error : public invalid_input {
public:
    parse_error(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
        : invalid_input(source + (line ? ":" + std::to_string(line) + ":" + std::to_string(column) : "") + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

inline json parse_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw parse_error(source, line, col, msg);
    }
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const std::filesystem::path& path) { return parse_text(read_text(path), path.string()); }

inline void require_object(const json& j, const std::string& what) {
    if (!j.is_object()) throw invalid_input(what + ": expected a JSON object");
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw invalid_input(what + ": unknown key \"" + it.key() + "\"");
    }
}

inline const json& require_key(const json& j, const char* key, const std::string& what) {
    if (!j.contains(key)) throw invalid_input(what + ": missing key \"" + key + "\"");
    return j.at(key);
}

inline integer to_integer(const json& j, const std::string& what) {
    if (j.is_number_integer()) return integer(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return integer(j.get<std::uint64_t>());
    if (j.is_string()) {
        const auto q = parse_rational(j.get<std::string>());
        if (!is_integral(q)) throw invalid_input(what + ": expected an integer");
        return numerator(q);
    }
    throw invalid_input(what + ": expected an integer or integer string");
}

inline rational to_rational(const json& j, const std::string& what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    return rational(to_integer(j, what));
}

inline real to_real_value(const json& j, const std::string& what) {
    if (!j.is_number()) throw invalid_input(what + ": expected a number");
    return static_cast<real>(j.get<double>());
}

inline int to_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw invalid_input(what + ": expected an integer");
    return j.get<int>();
}

// ---------------------------------------------------------------------------------------------
// Fixtures

/// {"label"?, "poly": [c_0, ..., c_n], "basis"?: [[coords of b_1 in 1, θ, ...], ...],
///  "expected_disc"?}. Coefficients and coordinates are integers or "p/q" strings.
inline number_field field_from_json(const json& j, int precision_bits = default_precision_bits,
                                    const std::string& what = "field") {
    require_object(j, what);
    reject_unknown_keys(j, {"label", "poly", "basis", "expected_disc", "description"}, what);
    const auto& p = require_key(j, "poly", what);
    if (!p.is_array() || p.size() < 2) throw invalid_input(what + ": \"poly\" must list at least two coefficients");
    std::vector<integer> coeffs;
    for (const auto& c : p) coeffs.push_back(to_integer(c, what + ".poly"));
    std::optional<rational_matrix> basis;
    if (j.contains("basis")) {
        const auto& b = j.at("basis");
        const std::size_t n = coeffs.size() - 1;
        if (!b.is_array() || b.size() != n) throw invalid_input(what + ": \"basis\" needs one element per degree");
        rational_matrix B(n, n);
        for (std::size_t col = 0; col < n; ++col) {
            if (!b[col].is_array() || b[col].size() != n) throw invalid_input(what + ": basis element has wrong length");
            for (std::size_t row = 0; row < n; ++row) B(row, col) = to_rational(b[col][row], what + ".basis");
        }
        basis = B;
    }
    auto F = number_field::build(coeffs, basis, precision_bits);
    if (j.contains("expected_disc")) {
        const auto d = to_integer(j.at("expected_disc"), what + ".expected_disc");
        if (d != F.discriminant())
            throw invalid_input(what + ": discriminant " + F.discriminant().str() + " differs from expected_disc " +
                                d.str());
    }
    return F;
}

inline std::string field_label(const json& j, const std::string& fallback) {
    return j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : fallback;
}

struct loaded_field {
    std::string label;
    number_field field;
};

inline loaded_field load_field(const std::filesystem::path& path, int precision_bits = default_precision_bits) {
    const auto j = read_json(path);
    return {field_label(j, path.stem().string()), field_from_json(j, precision_bits, path.string())};
}

/// Gram entry: a number (real) or [re, im].
inline complex to_complex(const json& j, const std::string& what) {
    if (j.is_number()) return {to_real_value(j, what), 0};
    if (j.is_array() && j.size() == 2) return {to_real_value(j[0], what), to_real_value(j[1], what)};
    throw invalid_input(what + ": gram entry must be a number or [re, im]");
}

/// {"label"?, "field": path relative to the fixture | inline field object, "rank": N,
///  "grams": [per embedding: N rows of N entries]}.
inline hermitian_bundle bundle_from_json(const json& j, const std::filesystem::path& base_dir,
                                         int precision_bits = default_precision_bits,
                                         const std::string& what = "bundle") {
    require_object(j, what);
    reject_unknown_keys(j, {"label", "field", "rank", "grams", "description"}, what);
    const auto& fj = require_key(j, "field", what);
    number_field F = fj.is_string() ? field_from_json(read_json(base_dir / fj.get<std::string>()), precision_bits,
                                                      (base_dir / fj.get<std::string>()).string())
                                    : field_from_json(fj, precision_bits, what + ".field");
    const int N = to_int(require_key(j, "rank", what), what + ".rank");
    if (N < 1) throw invalid_input(what + ": rank must be >= 1");
    const auto& gj = require_key(j, "grams", what);
    if (!gj.is_array() || gj.size() != static_cast<std::size_t>(F.degree()))
        throw invalid_input(what + ": \"grams\" needs one matrix per embedding");
    std::vector<complex_matrix> grams;
    for (const auto& m : gj) {
        if (!m.is_array() || m.size() != static_cast<std::size_t>(N)) throw invalid_input(what + ": gram has wrong shape");
        complex_matrix H(N, N);
        for (int i = 0; i < N; ++i) {
            if (!m[i].is_array() || m[i].size() != static_cast<std::size_t>(N))
                throw invalid_input(what + ": gram has wrong shape");
            for (int k = 0; k < N; ++k) H(i, k) = to_complex(m[i][k], what + ".grams");
        }
        grams.push_back(std::move(H));
    }
    return make_bundle(F, N, std::move(grams));
}

inline hermitian_bundle load_bundle(const std::filesystem::path& path, int precision_bits = default_precision_bits) {
    return bundle_from_json(read_json(path), path.parent_path(), precision_bits, path.string());
}

/// {"g", "r"?, "log_disc" | "disc", "omega_sq", "residual_C"?}.
inline curve_invariants invariants_from_json(const json& j, const std::string& what = "invariants") {
    require_object(j, what);
    reject_unknown_keys(j, {"label", "g", "r", "log_disc", "disc", "omega_sq", "residual_C", "description"}, what);
    curve_invariants inv;
    inv.g = to_int(require_key(j, "g", what), what + ".g");
    if (j.contains("r")) inv.r = to_int(j.at("r"), what + ".r");
    if (j.contains("log_disc") && j.contains("disc")) throw invalid_input(what + ": give log_disc or disc, not both");
    if (j.contains("log_disc")) inv.log_disc = to_real_value(j.at("log_disc"), what + ".log_disc");
    if (j.contains("disc")) {
        const auto d = to_integer(j.at("disc"), what + ".disc");
        if (d == 0) throw invalid_input(what + ": disc must be nonzero");
        inv.log_disc = std::log(std::abs(d.convert_to<real>()));
    }
    inv.omega_sq = to_real_value(require_key(j, "omega_sq", what), what + ".omega_sq");
    if (j.contains("residual_C")) inv.residual_C = to_real_value(j.at("residual_C"), what + ".residual_C");
    inv.validate();
    return inv;
}

inline curve_invariants load_invariants(const std::filesystem::path& path) {
    return invariants_from_json(read_json(path), path.string());
}

// ---------------------------------------------------------------------------------------------
// Reports

inline json num(real v) { return static_cast<double>(v) + 0.0; }  // no negative zero

inline json to_json(const field_element& a) {
    json out = json::array();
    for (const auto& q : a.coords) out.push_back(q.str());
    return out;
}

inline json to_json(const z_vector& z) { return json(std::vector<std::int64_t>(z.begin(), z.end())); }

inline json to_json(const rational_matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
        out.push_back(row);
    }
    return out;
}

inline json to_json(const complex_matrix& H) {
    json out = json::array();
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < H.cols(); ++k) row.push_back(json::array({num(H(i, k).real()), num(H(i, k).imag())}));
        out.push_back(row);
    }
    return out;
}

inline json to_json(const hermitian_bundle& E) {
    json grams = json::array();
    for (const auto& H : E.grams()) grams.push_back(to_json(H));
    json poly = json::array();
    for (const auto& c : E.field().coefficients()) poly.push_back(c.str());
    return json{{"field_poly", poly}, {"rank", E.rank()}, {"grams", grams}};
}

inline json to_json(const minima_profile& p) {
    json values = json::array(), witnesses = json::array(), fw = json::array();
    for (real v : p.values) values.push_back(num(v));
    for (const auto& w : p.witnesses) {
        witnesses.push_back(to_json(w.z_coords));
        json f = json::array();
        for (const auto& e : w.f_coords) f.push_back(to_json(e));
        fw.push_back(f);
    }
    return json{{"mode", to_string(p.mode)},
                {"norm", to_string(p.norm)},
                {"certified", p.certified},
                {"values", values},
                {"witnesses", witnesses},
                {"witness_field_coords", fw},
                {"attaining_counts", p.attaining_counts},
                {"radius_used", num(p.radius_used)},
                {"nodes", p.nodes}};
}

inline json to_json(const theorem_report& r) {
    json links = json::array();
    for (const auto& l : r.links)
        links.push_back(json{{"name", l.name},
                             {"lhs", num(l.lhs)},
                             {"rhs", num(l.rhs)},
                             {"slack", num(l.slack)},
                             {"holds", l.holds},
                             {"informational", l.informational}});
    json w = json::array();
    for (const auto& z : r.witnesses) w.push_back(to_json(z));
    return json{{"statement", r.statement},
                {"k", r.k},
                {"inputs_digest", r.inputs_digest},
                {"verdict", to_string(r.outcome)},
                {"links", links},
                {"witnesses", w}};
}

inline json to_json(const fuzz_trial& t) {
    json reps = json::array();
    for (const auto& r : t.reports) reps.push_back(to_json(r));
    char seed[32];
    std::snprintf(seed, sizeof seed, "%016llx", static_cast<unsigned long long>(t.seed));
    return json{{"trial", t.index},
                {"seed", seed},
                {"field", t.field_label},
                {"verdict", to_string(t.outcome)},
                {"bundle", to_json(t.bundle)},
                {"reports", reps}};
}

inline json field_report(const number_field& F, const std::string& label) {
    json emb = json::array();
    for (const auto& e : F.embeddings())
        emb.push_back(json{{"re", num(e.root.real())},
                           {"im", num(e.root.imag())},
                           {"real", e.is_real},
                           {"conjugate", e.conjugate},
                           {"radius", num(e.radius)}});
    const auto T = make_trace_module(F);
    json cod = json::array(), inv = json::array(), weights = json::array();
    for (const auto& c : T.codifferent_basis) cod.push_back(to_json(c));
    for (const auto& c : inverse_trace_module_basis(F, T)) inv.push_back(to_json(c));
    for (real w : T.metric_weights) weights.push_back(num(w));
    json basis = json::array();
    for (std::size_t i = 0; i < static_cast<std::size_t>(F.degree()); ++i) basis.push_back(to_json(F.basis_element(i)));
    json Ctable = json::array();
    for (int N = 1; N <= 16; ++N) Ctable.push_back(json{{"N", N}, {"C", num(constant_C(N, F))}});
    json poly = json::array();
    for (const auto& c : F.coefficients()) poly.push_back(c.str());
    const auto v = minkowski_codifferent_vector(F);
    return json{{"label", label},
                {"poly", poly},
                {"degree", F.degree()},
                {"signature", json::array({F.r1(), F.r2()})},
                {"discriminant", F.discriminant().str()},
                {"basis_supplied", F.basis_supplied()},
                {"order_may_be_non_maximal", !F.basis_supplied()},
                {"integral_basis", basis},
                {"trace_gram", to_json(F.trace_gram())},
                {"embeddings", emb},
                {"codifferent_basis", cod},
                {"trace_weights", weights},
                {"inverse_trace_module_basis", inv},
                {"log_covolume_inverse_trace_module", num(codifferent_covolume(F))},
                {"log_covolume_closed_form", num(codifferent_covolume_closed_form(F))},
                {"unit_ball_volume", num(unit_ball_volume(F))},
                {"minkowski_vector", json{{"element", to_json(v.v)},
                                          {"sup_log_norm", num(v.sup_log_norm)},
                                          {"bound", num(v.bound)},
                                          {"within_bound", v.sup_log_norm <= v.bound + structural_slack}}},
                {"C_table", Ctable}};
}

inline std::string format_real(real v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10Lg", v);
    return buf;
}

/// Tab-separated bound table; missing second bounds (d < 2g+1) print as "-".
inline std::string bounds_table(const curve_invariants& inv, const std::vector<std::int64_t>& ds) {
    std::string out;
    out += "# g=" + std::to_string(inv.g) + " r=" + std::to_string(inv.r) + " log_disc=" + format_real(inv.log_disc) +
           " omega_sq=" + format_real(inv.omega_sq) + " residual_C=" + format_real(inv.residual_C) + "\n";
    out += "# lower bounds include -residual_C*log(d)/d, upper bounds +residual_C*log(d)/d\n";
    out += "d\tlower_a\tlower_b\tupper_a\tupper_b\tlimit\tlog_d_over_d\n";
    const real limit = asymptotic_limit(inv.omega_sq, 2 * static_cast<real>(inv.g) - 2);
    for (std::int64_t d : ds) {
        const auto lo = height_lower_bounds(inv, d);
        const auto hi = height_upper_bounds(inv, d);
        out += std::to_string(d) + "\t" + format_real(lo.a) + "\t" + (lo.b ? format_real(*lo.b) : "-") + "\t" +
               format_real(hi.a) + "\t" + (hi.b ? format_real(*hi.b) : "-") + "\t" + format_real(limit) + "\t" +
               format_real(d == 1 ? real(0) : std::log(static_cast<real>(d)) / static_cast<real>(d)) + "\n";
    }
    return out;
}

inline json to_json(const consistency_report& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"d", row.d},
                            {"lower_a", num(row.lower.a)},
                            {"lower_b", row.lower.b ? num(*row.lower.b) : json(nullptr)},
                            {"upper_a", num(row.upper.a)},
                            {"upper_b", row.upper.b ? num(*row.upper.b) : json(nullptr)}});
    return json{{"limit", num(r.limit)},
                {"ordering_holds", r.ordering_holds ? json(*r.ordering_holds) : json(nullptr)},
                {"fitted_K", num(r.fitted_K)},
                {"deviation_at_top", num(r.deviation_at_top)},
                {"converged", r.converged},
                {"rows", rows}};
}

}  // namespace hermlat::io
