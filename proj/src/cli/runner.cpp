#include "growthlab/cli/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "growthlab/lie/certificates.hpp"

namespace growthlab::cli {

using nlohmann::json;

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::not_divisorially_hyperbolic:
        return "not-divisorially-hyperbolic";
    case Verdict::map_not_subexponential:
        return "map-not-subexponential";
    case Verdict::not_certified:
        break;
    }
    return "not-certified";
}

void RunConfig::validate() const
{
    if (command != "profile" && command != "classify" && command != "lie")
        throw std::invalid_argument("command must be profile, classify or lie");
    if (command == "lie")
        return;
    if (!(t_min > 0.0))
        throw std::invalid_argument("--t-min must be positive");
    if (!(t_max > t_min))
        throw std::invalid_argument("--t-max must exceed --t-min");
    if (t_steps < 8)
        throw std::invalid_argument("--t-steps must be at least 8");
    if (!(r0 > 0.0))
        throw std::invalid_argument("--r0 must be positive");
    for (const std::string* path : {&out_csv, &out_json}) {
        if (path->empty())
            continue;
        const auto dir = std::filesystem::absolute(*path).parent_path();
        if (!std::filesystem::is_directory(dir))
            throw std::invalid_argument("output directory does not exist: " + dir.string());
    }
}

Verdict verdict_from(const growth::ConditionI& c1, const growth::ConditionII& c2)
{
    const auto ii = c2.holds();
    if (ii && !*ii)
        return Verdict::map_not_subexponential;
    if (ii && *ii && c1.holds)
        return Verdict::not_divisorially_hyperbolic;
    return Verdict::not_certified;
}

ProfileReport run_profile(const RunConfig& config, std::ostream& log)
{
    config.validate();
    const auto model = gallery::gallery(config.model, {config.n});
    growth::QuadratureSpec quad = config.quad;
    quad.method = config.method.value_or(model.domain_dim == 2 ? growth::QuadMethod::gauss_legendre
                                                               : growth::QuadMethod::monte_carlo);
    double t_max = config.t_max;
    ProfileReport r;
    if (model.radius_cap && t_max > *model.radius_cap) {
        t_max = *model.radius_cap;
        const std::string note = "t_max capped at " + std::to_string(static_cast<int>(t_max)) + " for model " + model.name;
        log << "growthlab: " << note << "\n";
        r.notes.push_back(note);
        if (!(t_max > config.t_min))
            throw std::invalid_argument("--t-min lies beyond the radius cap of model " + model.name);
    }
    const auto grid = growth::linear_grid(config.t_min, t_max, config.t_steps);
    r.profile = growth::build_profile(model, grid, quad);
    try {
        r.condition_i = growth::check_condition_i(r.profile, config.r0);
    } catch (const std::invalid_argument& e) {
        r.condition_i.r0 = config.r0;
        r.notes.push_back(std::string("condition (i) not evaluated: ") + e.what());
    }
    try {
        r.condition_ii = growth::classify_condition_ii(r.profile);
    } catch (const std::invalid_argument& e) {
        r.notes.push_back(std::string("condition (ii) not evaluated: ") + e.what());
    }
    if (grid.back() / grid.front() >= 4.0)
        r.finite_order = growth::finite_order_fit(r.profile);
    if (r.profile.sphere_direct)
        r.hoelder = growth::hoelder_chain_check(r.profile);
    r.violations = growth::check_invariants(r.profile);
    if (r.hoelder && !r.hoelder->holds) {
        std::ostringstream os;
        os << "worst relative margin " << r.hoelder->worst_margin;
        r.violations.push_back({"Hoelder chain inequality", os.str()});
    }
    r.convergence = growth::check_convergence(model, grid.back(), quad);
    r.verdict = verdict_from(r.condition_i, r.condition_ii);
    for (const auto& v : r.violations)
        log << "growthlab: invariant violated: " << v.name << " " << v.detail << "\n";
    if (!r.violations.empty()) {
        r.exit_code = exit_invariant;
    } else if (!r.convergence.converged) {
        log << "growthlab: quadrature not converged at t = " << r.convergence.t
            << ": relative change " << r.convergence.relative_change << "\n";
        r.exit_code = exit_nonconvergence;
    }
    return r;
}

namespace {

std::string g17(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json quad_json(const growth::QuadratureSpec& q)
{
    return {{"method", growth::to_string(q.method)},
            {"radial_order", q.radial_order},
            {"angular_order", q.angular_order},
            {"sample_count", q.sample_count},
            {"seed", q.seed}};
}

json nullable(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

} // namespace

void write_csv(const growth::GrowthProfile& p, std::ostream& out)
{
    out << "t,vol,sphere_ball,sphere_direct,ratio_i,F\n";
    for (std::size_t k = 0; k < p.t.size(); ++k) {
        out << g17(p.t[k]) << ',' << g17(p.vol[k]) << ',' << g17(p.sphere_ball[k]) << ',';
        if (p.sphere_direct)
            out << g17((*p.sphere_direct)[k]);
        out << ',' << g17(p.ratio_i[k]) << ',' << g17(p.F[k]) << '\n';
    }
}

json report_json(const RunConfig& config, const ProfileReport& r)
{
    const auto& p = r.profile;
    const auto& c1 = r.condition_i;
    const auto& c2 = r.condition_ii;
    json j;
    j["model"] = p.model;
    j["n"] = config.n;
    j["grid"] = {{"t_min", p.t.front()}, {"t_max", p.t.back()}, {"t_steps", p.t.size()}};
    j["quadrature"] = quad_json(p.quad);
    j["seed"] = p.quad.seed;
    j["r0"] = c1.r0;
    j["C1"] = c1.C1;
    j["condition_i"] = {{"holds", c1.holds}, {"trend_slope", c1.trend_slope}, {"points", c1.points}};
    j["classification"] = growth::to_string(c2.classification);
    const auto holds = c2.holds();
    j["condition_ii"] = {{"classification", growth::to_string(c2.classification)},
                         {"lambda", c2.lambda},
                         {"power", c2.power},
                         {"raw_slope", c2.raw_slope},
                         {"log_f_over_b_decreasing", c2.log_f_over_b_decreasing},
                         {"window", {c2.window_start, c2.window_end}},
                         {"points", c2.points},
                         {"witness_C", nullable(c2.witness_C)},
                         {"holds", holds ? json(*holds) : json(nullptr)}};
    j["slopes"] = {{"condition_i_trend", c1.trend_slope},
                   {"log_F_rate", c2.lambda},
                   {"log_F_raw", c2.raw_slope},
                   {"log_vol_order", r.finite_order.order}};
    j["finite_order"] = {{"order", r.finite_order.order},
                         {"residual", r.finite_order.residual},
                         {"finite", r.finite_order.finite},
                         {"window", {r.finite_order.window_start, r.finite_order.window_end}}};
    if (r.hoelder)
        j["hoelder"] = {{"worst_margin", r.hoelder->worst_margin},
                        {"holds", r.hoelder->holds},
                        {"epsilon", r.hoelder->epsilon}};
    else
        j["hoelder"] = nullptr;
    j["convergence"] = {{"t", r.convergence.t},
                        {"base", r.convergence.base},
                        {"refined", r.convergence.refined},
                        {"relative_change", r.convergence.relative_change},
                        {"tolerance", r.convergence.tolerance},
                        {"converged", r.convergence.converged}};
    json v = json::array();
    for (const auto& x : r.violations)
        v.push_back({{"name", x.name}, {"detail", x.detail}});
    j["invariant_violations"] = v;
    j["verdict"] = to_string(r.verdict);
    j["notes"] = r.notes;
    j["exit_code"] = r.exit_code;
    return j;
}

namespace {

using lie::GQ;
using lie::InvariantComplex;
using lie::InvariantForm;

InvariantForm random_closed_real_2form(const InvariantComplex& cx, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-3, 3);
    InvariantForm a(cx.dim());
    for (const auto& f : lie::closed_real_forms(cx, 2))
        a += GQ(d(rng)) * f;
    return a;
}

InvariantForm random_real_1form(const InvariantComplex& cx, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-3, 3);
    InvariantForm b(cx.dim());
    for (int k = 0; k < cx.dim(); ++k)
        b += GQ(mpq_class(d(rng)), mpq_class(d(rng))) * InvariantForm::generator(cx.dim(), k);
    return lie::realify(b);
}

json certificate_json(const lie::ConeCertificate& c, const InvariantComplex& cx, int& exit_code, std::ostream& log)
{
    json j = lie::to_json(c, cx);
    const bool ok = lie::reverify(c, cx);
    j["reverified"] = ok;
    if (!ok) {
        log << "growthlab: certificate " << lie::to_string(c.kind) << " failed re-verification\n";
        exit_code = exit_invariant;
    }
    return j;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& checks)
{
    static const std::vector<std::string> all{"jacobi", "structure-eqs", "witness", "pmap", "dk-search"};
    if (checks.empty())
        return {"jacobi", "structure-eqs"};
    std::vector<std::string> out;
    for (const auto& c : checks) {
        if (c == "all")
            return all;
        if (std::find(all.begin(), all.end(), c) == all.end())
            throw std::invalid_argument("unknown check '" + c + "'");
        out.push_back(c);
    }
    return out;
}

} // namespace

json run_lie(const RunConfig& config, std::ostream& log, int& exit_code)
{
    exit_code = exit_ok;
    const auto checks = expand_checks(config.checks);
    const lie::ComplexLieAlgebra algebra =
        config.structure.empty() ? lie::builtin_algebra(config.model, config.n) : lie::load_structure_file(config.structure);
    json j;
    j["source"] = config.structure.empty() ? "builtin:" + config.model : config.structure;
    j["algebra"] = algebra.to_json();
    j["seed"] = config.quad.seed;
    j["invariant_forms_only"] = true;

    const lie::JacobiReport jac = lie::check_jacobi(algebra);
    json results = json::object();
    results["jacobi"] = {{"holds", jac.holds}, {"message", jac.message}};
    if (!jac.holds) {
        log << "growthlab: " << jac.message << "\n";
        results["jacobi"]["triple"] = {jac.a + 1, jac.b + 1, jac.c + 1};
        j["checks"] = results;
        exit_code = exit_invariant;
        return j;
    }
    const InvariantComplex cx(algebra);
    const int n = cx.dim();
    std::mt19937_64 rng(config.quad.seed);
    for (const auto& check : checks) {
        if (check == "jacobi")
            continue;
        if (check == "structure-eqs") {
            json eqs = json::array();
            const auto d = cx.structure_equations();
            for (int k = 0; k < n; ++k)
                eqs.push_back("d " + algebra.labels()[k] + " = " + cx.to_string(d[k]));
            const bool dd = cx.bicomplex_identities_hold();
            results["structure-eqs"] = {{"equations", eqs}, {"d_squared_zero", dd}};
            if (!dd)
                exit_code = exit_invariant;
        } else if (n < 2) {
            results[check] = {{"skipped", "needs dimension >= 2"}};
        } else if (check == "witness") {
            const auto c = lie::degenerate_balanced_witness(cx, lie::standard_metric(n));
            results["witness"] = certificate_json(c, cx, exit_code, log);
            results["witness"]["metric"] = cx.to_string(lie::standard_metric(n));
        } else if (check == "pmap") {
            const auto space = lie::aeppli_space(cx, n - 1, n - 1);
            bool consistent = true;
            const int trials = 50;
            for (int t = 0; t < trials; ++t) {
                const InvariantForm alpha = random_closed_real_2form(cx, rng);
                const InvariantForm beta = random_real_1form(cx, rng);
                if (!(lie::p_map(cx, space, alpha) == lie::p_map(cx, space, alpha + cx.d(beta))))
                    consistent = false;
            }
            json dims = json::array();
            for (int p = 0; p <= n; ++p)
                for (int q = 0; q <= n; ++q) {
                    const auto d = lie::cohomology_dims(cx, p, q);
                    dims.push_back({{"p", p}, {"q", q}, {"invariant_bott_chern", d.bott_chern},
                                    {"invariant_aeppli", d.aeppli}});
                }
            results["pmap"] = {{"trials", trials},
                               {"consistent", consistent},
                               {"aeppli_target_dim", space.complement.size()},
                               {"dims", dims}};
            if (!consistent) {
                log << "growthlab: P map gave different classes for cohomologous forms\n";
                exit_code = exit_invariant;
            }
        } else if (check == "dk-search") {
            const InvariantForm alpha = random_closed_real_2form(cx, rng);
            const auto r = lie::dk_membership_search(cx, alpha);
            json c = certificate_json(r.certificate, cx, exit_code, log);
            c["optimum"] = r.optimum;
            c["iterations"] = r.iterations;
            results["dk-search"] = c;
        }
    }
    j["checks"] = results;
    return j;
}

namespace {

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

void add_common(CLI::App* app, RunConfig& c)
{
    app->add_option("--model", c.model, "gallery model or builtin algebra");
    app->add_option("--n", c.n, "ambient dimension");
    app->add_option("--seed", c.quad.seed, "Monte Carlo and sampling seed");
    app->add_option("--out-json", c.out_json, "JSON report path");
}

void add_growth(CLI::App* app, RunConfig& c, std::string& quad, int& order)
{
    app->add_option("--t-min", c.t_min, "smallest radius");
    app->add_option("--t-max", c.t_max, "largest radius");
    app->add_option("--t-steps", c.t_steps, "number of radii");
    app->add_option("--quad", quad, "gl or mc")->check(CLI::IsMember({"gl", "mc"}));
    app->add_option("--order", order, "radial Gauss-Legendre order");
    app->add_option("--angular-order", c.quad.angular_order, "Gauss-Legendre nodes per polar angle");
    app->add_option("--mc-samples", c.quad.sample_count, "Monte Carlo sample count");
    app->add_option("--r0", c.r0, "start of the tail window for condition (i)");
    app->add_option("--out-csv", c.out_csv, "CSV profile path");
}

} // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Volume growth of holomorphic maps and invariant cohomology of Lie algebras", "growthlab"};
    app.require_subcommand(1);
    RunConfig config;
    std::string quad;
    int order = 0;
    std::string checks;
    auto* profile = app.add_subcommand("profile", "profile ball volumes and sphere integrals of a gallery map");
    auto* classify = app.add_subcommand("classify", "classify growth conditions (i) and (ii)");
    auto* lie_cmd = app.add_subcommand("lie", "exact checks on a complex Lie algebra");
    for (auto* sub : {profile, classify}) {
        add_common(sub, config);
        add_growth(sub, config, quad, order);
    }
    add_common(lie_cmd, config);
    lie_cmd->add_option("--structure", config.structure, "structure-constant JSON file");
    lie_cmd->add_option("--check", checks, "comma list of jacobi,structure-eqs,witness,pmap,dk-search or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    config.command = app.get_subcommands().front()->get_name();
    if (!checks.empty()) {
        std::stringstream ss(checks);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                config.checks.push_back(item);
    }
    if (!quad.empty())
        config.method = growth::parse_quad_method(quad);
    if (order > 0)
        config.quad.radial_order = order;

    try {
        config.validate();
        if (config.command == "lie") {
            int code = exit_ok;
            const json j = run_lie(config, err, code);
            if (config.out_json.empty())
                out << j.dump(2) << "\n";
            else
                write_file(config.out_json, j.dump(2) + "\n");
            if (j["checks"].contains("witness"))
                err << "growthlab: witness verdict: " << j["checks"]["witness"]["verdict"].get<std::string>() << "\n";
            return code;
        }
        const ProfileReport r = run_profile(config, err);
        const json j = report_json(config, r);
        if (config.command == "profile") {
            std::ostringstream csv;
            write_csv(r.profile, csv);
            if (config.out_csv.empty())
                out << csv.str();
            else
                write_file(config.out_csv, csv.str());
            if (!config.out_json.empty())
                write_file(config.out_json, j.dump(2) + "\n");
        } else if (config.out_json.empty()) {
            out << j.dump(2) << "\n";
        } else {
            write_file(config.out_json, j.dump(2) + "\n");
        }
        err << "growthlab: model=" << r.profile.model << " classification=" << j["classification"].get<std::string>()
            << " lambda=" << r.condition_ii.lambda << " condition_i=" << (r.condition_i.holds ? "holds" : "fails")
            << " verdict=" << to_string(r.verdict) << "\n";
        return r.exit_code;
    } catch (const lie::JacobiError& e) {
        err << "growthlab: " << e.what() << "\n";
        return exit_invariant;
    } catch (const lie::StructureError& e) {
        err << "growthlab: " << e.what() << "\n";
        return exit_invariant;
    } catch (const std::exception& e) {
        err << "growthlab: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace growthlab::cli
