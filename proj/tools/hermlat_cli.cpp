#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermlat/io.hpp"

namespace {

using hermlat::io::json;

enum exit_code { exit_pass = 0, exit_usage = 1, exit_check_failed = 2, exit_uncertified = 3 };

struct run_config {
    std::string fixture;
    std::optional<int> k;
    std::string mode = "f-rank";
    std::string norm = "sup";
    std::string lattice = "bundle";
    std::string statement = "all";
    std::uint64_t seed = 1;
    int precision = hermlat::default_precision_bits;
    std::int64_t budget = hermlat::default_budget;
    std::optional<double> slack;
    std::string out;
    std::optional<int> random_rank;
    std::vector<std::string> fields;
    int rank_max = 2;
    std::size_t trials = 10;
    int max_z_rank = 8;
    std::vector<std::int64_t> ds;
    bool consistency = false;
};

json config_json(const std::string& command, const run_config& c) {
    json j{{"command", command}, {"fixture", c.fixture},   {"seed", c.seed},
           {"precision_bits", c.precision}, {"budget", c.budget}};
    j["slack_transcendental"] = c.slack ? *c.slack : static_cast<double>(hermlat::transcendental_slack);
    j["slack_structural"] = static_cast<double>(hermlat::structural_slack);
    if (command == "minima") {
        j["k"] = c.k ? json(*c.k) : json(nullptr);
        j["mode"] = c.mode;
        j["norm"] = c.norm;
        j["lattice"] = c.lattice;
        j["random_rank"] = c.random_rank ? json(*c.random_rank) : json(nullptr);
    }
    if (command == "check") {
        j["statement"] = c.statement;
        j["k"] = c.k ? json(*c.k) : json(nullptr);
    }
    if (command == "fuzz") {
        j["fields"] = c.fields;
        j["rank_max"] = c.rank_max;
        j["trials"] = c.trials;
        j["max_z_rank"] = c.max_z_rank;
    }
    return j;
}

json envelope(const std::string& command, const run_config& c, json result) {
    return json{{"version", hermlat::io::format_version}, {"config", config_json(command, c)}, {"result", std::move(result)}};
}

void emit(const run_config& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw hermlat::invalid_input("cannot write " + c.out);
    f << text;
}

hermlat::rank_mode parse_mode(const std::string& s) {
    return s == "q-rank" ? hermlat::rank_mode::q_rank : hermlat::rank_mode::f_rank;
}
hermlat::norm_kind parse_norm(const std::string& s) { return s == "sum" ? hermlat::norm_kind::sum : hermlat::norm_kind::sup; }

int cmd_field(const run_config& c) {
    const auto f = hermlat::io::load_field(c.fixture, c.precision);
    emit(c, envelope("field", c, hermlat::io::field_report(f.field, f.label)).dump(2) + "\n");
    return exit_pass;
}

int cmd_minima(const run_config& c) {
    std::optional<hermlat::hermitian_bundle> E;
    if (c.random_rank) {
        const auto f = hermlat::io::load_field(c.fixture, c.precision);
        hermlat::gaussian_source rng(c.seed);
        E = hermlat::random_bundle(f.field, *c.random_rank, rng);
    } else {
        E = hermlat::io::load_bundle(c.fixture, c.precision);
    }
    const auto mode = parse_mode(c.mode);
    const auto norm = parse_norm(c.norm);
    const auto L = c.lattice == "dual"         ? hermlat::restrict_scalars(hermlat::dual_bundle(*E))
                   : c.lattice == "trace-dual" ? hermlat::trace_dual(*E).lattice()
                                               : hermlat::restrict_scalars(*E);
    const int k = c.k ? *c.k : (mode == hermlat::rank_mode::f_rank ? L.rank() : L.z_rank());
    const auto prof = hermlat::successive_minima(L, k, mode, norm, c.budget);
    json result{{"bundle", hermlat::io::to_json(*E)}, {"profile", hermlat::io::to_json(prof)}};
    emit(c, envelope("minima", c, result).dump(2) + "\n");
    return prof.certified ? exit_pass : exit_uncertified;
}

int verdict_exit(const std::vector<hermlat::theorem_report>& reps, bool extra_fail = false, bool extra_uncert = false) {
    bool fail = extra_fail, uncert = extra_uncert;
    for (const auto& r : reps) {
        fail = fail || r.outcome == hermlat::verdict::fail;
        uncert = uncert || r.outcome == hermlat::verdict::uncertified;
    }
    return fail ? exit_check_failed : uncert ? exit_uncertified : exit_pass;
}

int cmd_check(const run_config& c) {
    const auto E = hermlat::io::load_bundle(c.fixture, c.precision);
    hermlat::transference_context ctx(E, c.budget);
    const hermlat::real ts = c.slack ? static_cast<hermlat::real>(*c.slack) : hermlat::transcendental_slack;
    std::vector<hermlat::theorem_report> reps;
    json extra = json::array();
    bool extra_fail = false, extra_uncert = false;
    const int N = ctx.N(), n = ctx.N() * ctx.r();
    auto ks = [&](int lo, int hi) {
        std::vector<int> out;
        if (c.k) {
            if (*c.k < lo || *c.k > hi) throw hermlat::invalid_input("--k out of range for this statement");
            out.push_back(*c.k);
        } else {
            for (int k = lo; k <= hi; ++k) out.push_back(k);
        }
        return out;
    };
    const bool all = c.statement == "all";
    if (all || c.statement == "transference")
        for (int k : ks(1, N)) reps.push_back(hermlat::check_transference(ctx, k, ts));
    if (all || c.statement == "banaszczyk")
        for (int k : ks(1, n)) reps.push_back(hermlat::check_banaszczyk(ctx, k, ts));
    if (all || c.statement == "rank-comparison")
        for (int k : ks(0, N - 1)) reps.push_back(hermlat::check_rank_comparison(ctx, k));
    if (all || c.statement == "proof-chain")
        for (int k : ks(1, N)) reps.push_back(hermlat::check_proof_chain(ctx, k, ts));
    if (all || c.statement == "dual-minima")
        for (int k : ks(1, N)) {
            const auto r = hermlat::dual_minima_comparison(E, k, c.budget);
            extra_fail = extra_fail || (r.certified && !r.holds);
            extra_uncert = extra_uncert || !r.certified;
            extra.push_back(json{{"statement", "dual-minima"},
                                 {"k", k},
                                 {"mu_dual", hermlat::io::num(r.mu_dual)},
                                 {"mu_trace_dual", hermlat::io::num(r.mu_trace_dual)},
                                 {"v_log_norm", hermlat::io::num(r.v_log_norm)},
                                 {"verdict", !r.certified ? "uncertified" : r.holds ? "pass" : "fail"}});
        }
    json out = json::array();
    for (const auto& r : reps) out.push_back(hermlat::io::to_json(r));
    for (auto& e : extra) out.push_back(std::move(e));
    const int code = verdict_exit(reps, extra_fail, extra_uncert);
    emit(c, envelope("check", c, json{{"reports", out}, {"all_pass", code == exit_pass}}).dump(2) + "\n");
    return code;
}

int cmd_fuzz(const run_config& c) {
    std::vector<hermlat::fuzz_field> fields;
    for (const auto& path : c.fields) {
        auto f = hermlat::io::load_field(path, c.precision);
        fields.push_back({f.label, std::move(f.field)});
    }
    hermlat::fuzz_options opt;
    opt.rank_max = c.rank_max;
    opt.trials = c.trials;
    opt.seed = c.seed;
    opt.budget = c.budget;
    opt.max_z_rank = c.max_z_rank;
    if (c.slack) opt.slack = static_cast<hermlat::real>(*c.slack);
    const auto trials = hermlat::fuzz(fields, opt);
    std::string text = json{{"version", hermlat::io::format_version}, {"config", config_json("fuzz", c)}}.dump() + "\n";
    std::size_t pass = 0, fail = 0, uncert = 0;
    for (const auto& t : trials) {
        text += hermlat::io::to_json(t).dump() + "\n";
        (t.outcome == hermlat::verdict::pass ? pass : t.outcome == hermlat::verdict::fail ? fail : uncert)++;
    }
    text += json{{"summary", json{{"trials", trials.size()}, {"pass", pass}, {"fail", fail}, {"uncertified", uncert}}}}
                .dump() +
            "\n";
    emit(c, text);
    return fail ? exit_check_failed : uncert ? exit_uncertified : exit_pass;
}

int cmd_bounds(const run_config& c) {
    const auto inv = hermlat::io::load_invariants(c.fixture);
    if (c.consistency) {
        const auto rep = hermlat::asymptotic_consistency(inv);
        emit(c, envelope("bounds", c, hermlat::io::to_json(rep)).dump(2) + "\n");
        const bool ok = rep.converged && rep.ordering_holds.value_or(true);
        return ok ? exit_pass : exit_check_failed;
    }
    std::vector<std::int64_t> ds = c.ds;
    if (ds.empty()) ds = hermlat::consistency_grid();
    emit(c, "# version " + std::string(hermlat::io::format_version) + "\n" + hermlat::io::bounds_table(inv, ds));
    return exit_pass;
}

void add_common(CLI::App* sub, run_config& c) {
    sub->add_option("--precision", c.precision, "significand bits for embeddings (24..64)")->capture_default_str();
    sub->add_option("--budget", c.budget, "enumeration node budget")->capture_default_str();
    sub->add_option("--out", c.out, "write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    run_config c;
    CLI::App app{"hermlat: successive minima and transference checks for hermitian lattices over number fields"};
    app.require_subcommand(1);

    auto* field = app.add_subcommand("field", "field invariants, trace data and C(N, F) table");
    field->add_option("--fixture", c.fixture, "field fixture (JSON)")->required();
    add_common(field, c);

    auto* minima = app.add_subcommand("minima", "successive minima of a bundle");
    minima->add_option("--fixture", c.fixture, "bundle fixture, or field fixture with --random-rank")->required();
    minima->add_option("--k", c.k, "number of minima (default: all)");
    minima->add_option("--mode", c.mode)->check(CLI::IsMember({"f-rank", "q-rank"}))->capture_default_str();
    minima->add_option("--norm", c.norm)->check(CLI::IsMember({"sup", "sum"}))->capture_default_str();
    minima->add_option("--lattice", c.lattice, "bundle | dual | trace-dual")
        ->check(CLI::IsMember({"bundle", "dual", "trace-dual"}))
        ->capture_default_str();
    minima->add_option("--random-rank", c.random_rank, "draw a random bundle of this rank over the field fixture");
    minima->add_option("--seed", c.seed)->capture_default_str();
    add_common(minima, c);

    auto* check = app.add_subcommand("check", "verify transference statements on a bundle");
    check->add_option("--fixture", c.fixture, "bundle fixture (JSON)")->required();
    check->add_option("--statement", c.statement)
        ->check(CLI::IsMember({"all", "transference", "banaszczyk", "rank-comparison", "proof-chain", "dual-minima"}))
        ->capture_default_str();
    check->add_option("--k", c.k, "single index (default: all)");
    check->add_option("--slack", c.slack, "slack for statements with transcendental constants");
    check->add_option("--seed", c.seed)->capture_default_str();
    add_common(check, c);

    auto* fuzz = app.add_subcommand("fuzz", "random bundles through every statement; JSON lines");
    fuzz->add_option("--fields", c.fields, "field fixtures")->required()->delimiter(',');
    fuzz->add_option("--rank-max", c.rank_max)->capture_default_str();
    fuzz->add_option("--trials", c.trials)->capture_default_str();
    fuzz->add_option("--seed", c.seed)->capture_default_str();
    fuzz->add_option("--slack", c.slack, "slack for statements with transcendental constants");
    fuzz->add_option("--max-z-rank", c.max_z_rank, "guard on rank-max times field degree")->capture_default_str();
    add_common(fuzz, c);

    auto* bounds = app.add_subcommand("bounds", "height bound table (TSV)");
    bounds->add_option("--fixture", c.fixture, "invariants fixture (JSON)")->required();
    bounds->add_option("--d", c.ds, "degrees (default 10..10^8)")->delimiter(',');
    bounds->add_flag("--consistency", c.consistency, "asymptotic consistency report (JSON)");
    bounds->add_option("--out", c.out, "write output to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*field) return cmd_field(c);
        if (*minima) return cmd_minima(c);
        if (*check) return cmd_check(c);
        if (*fuzz) return cmd_fuzz(c);
        if (*bounds) return cmd_bounds(c);
    } catch (const hermlat::budget_exhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_uncertified;
    } catch (const hermlat::precision_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_uncertified;
    } catch (const hermlat::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
