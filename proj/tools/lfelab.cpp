// lfelab: command-line front end for the star-algebra / local-field-equation
// library. Subcommands emit CSV time series (first line: a '#' header echoing
// the full run configuration) or JSON scalar summaries; reruns with the same
// configuration reproduce every output byte for byte.
//
// Exit codes: 0 success, 2 precondition violation, 3 numerical failure,
// 4 acceptance-suite failure.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfe/checks.hpp"
#include "lfe/errors.hpp"
#include "lfe/gaussfun.hpp"
#include "lfe/glfe.hpp"
#include "lfe/mcsim.hpp"
#include "lfe/ratefit.hpp"
#include "lfe/riccati.hpp"
#include "lfe/version.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace lfe;

// Shortest round-trip decimal form, used for configuration echoes.
std::string dtos(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Fixed data-cell format for CSV bodies.
std::string cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

using KvList = std::vector<std::pair<std::string, std::string>>;

std::string csv_header(const std::string& cmd, const KvList& kv) {
    std::string line = "# lfelab v";
    line += kVersion;
    line += " cmd=" + cmd;
    for (const auto& [k, v] : kv) line += " " + k + "=" + v;
    return line;
}

ordered_json meta_json(const std::string& cmd, const KvList& kv) {
    ordered_json m;
    m["tool"] = "lfelab";
    m["version"] = std::string(kVersion);
    m["cmd"] = cmd;
    for (const auto& [k, v] : kv) m[k] = v;
    return m;
}

// Opens --out when present, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw DomainError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file.is_open() ? file : std::cout; }

private:
    std::ofstream file;
};

std::uint64_t default_seed() {
    const char* env = std::getenv("LFE_LAB_SEED");
    if (env == nullptr) return kDefaultCheckSeed;
    std::uint64_t value = 0;
    const char* end = env + std::string_view(env).size();
    const auto res = std::from_chars(env, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw DomainError("LFE_LAB_SEED must be an unsigned integer");
    return value;
}

// Uniform output grid covering [0, t_max] with spacing at most `spacing`,
// matching the Riccati integrator's node placement.
std::vector<double> uniform_grid(double t_max, double spacing) {
    if (!(spacing > 0.0) || !(t_max > 0.0))
        throw DomainError("grid spacing and t-max must be positive");
    const int cells =
        std::max(1, static_cast<int>(std::ceil(t_max / spacing - 1e-9)));
    std::vector<double> ts(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i)
        ts[static_cast<std::size_t>(i)] = t_max * i / cells;
    return ts;
}

double entry_of(const SymCov& s, int r) {
    switch (r) {
        case 0: return s.a;
        case 1: return s.b;
        default: return s.c;
    }
}

ordered_json ratefit_json(const RateFit& f) {
    ordered_json j;
    j["rate"] = f.rate;
    j["intercept"] = f.intercept;
    j["r_squared"] = f.r_squared;
    j["window"] = {f.window_lo, f.window_hi};
    j["n_points"] = f.n_points;
    return j;
}

// Decay columns can reach the rounding floor (clamped to 0) late in a run;
// fit on the strictly positive samples inside the window, or report null.
ordered_json fit_positive(const std::vector<double>& ts,
                          const std::vector<double>& vs, double lo, double hi) {
    std::vector<double> ft, fv;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < lo || ts[i] > hi || !(vs[i] > 0.0)) continue;
        ft.push_back(ts[i]);
        fv.push_back(vs[i]);
    }
    if (ft.size() < 2) return nullptr;
    return ratefit_json(fit_rate(ft, fv, lo, hi));
}

// ---- subcommands -----------------------------------------------------------

void cmd_stationary(double alpha, double beta) {
    const SymCov pi = stationary_pi(alpha, beta);
    const PrecisionDet pd = precision_and_det(pi);

    ordered_json j;
    j["meta"] = meta_json("stationary", {{"alpha", dtos(alpha)}, {"beta", dtos(beta)}});
    j["sigma"] = ordered_json{{"a", pi.a}, {"b", pi.b}, {"c", pi.c}};
    j["det"] = pd.det;
    j["precision_row0"] = {pd.precision(0, 0), pd.precision(0, 1), pd.precision(0, 2)};
    j["markov_zero"] = pd.precision(1, 2);
    std::cout << j.dump(2) << "\n";
}

struct TrajectoryOpts {
    int kappa = 2;
    double alpha = 2.0;
    double beta = 1.0;
    std::vector<double> init{1.0, 0.0, 0.0};
    double t_max = 10.0;
    double grid = 0.01;
    std::string out;
};

void cmd_riccati(const TrajectoryOpts& o) {
    const SymCov s0 = make_symcov(o.kappa, o.init[0], o.init[1], o.init[2]);
    IntegratorConfig cfg;
    cfg.grid_spacing = o.grid;
    const CovTrajectory traj = integrate(o.kappa, o.alpha, o.beta, s0, o.t_max, cfg);

    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << csv_header("riccati",
                     {{"kappa", std::to_string(o.kappa)},
                      {"alpha", dtos(o.alpha)},
                      {"beta", dtos(o.beta)},
                      {"init", dtos(o.init[0]) + "," + dtos(o.init[1]) + "," + dtos(o.init[2])},
                      {"t-max", dtos(o.t_max)},
                      {"grid", dtos(o.grid)}})
       << "\n";
    os << "t,a,b,c\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        os << cell(traj.times[i]) << ',' << cell(traj.points[i].a) << ','
           << cell(traj.points[i].b) << ',' << cell(traj.points[i].c) << "\n";
}

struct GlfeOpts {
    double alpha = 2.0;
    double beta = 1.0;
    double var0 = 1.0;
    double t_max = 10.0;
    double grid = 0.01;
    std::string out;
};

void cmd_glfe(const GlfeOpts& o) {
    const GlfeParams p = make_glfe_params(o.alpha, o.beta, o.var0);
    const std::vector<double> ts = uniform_grid(o.t_max, o.grid);

    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << csv_header("glfe", {{"alpha", dtos(o.alpha)},
                              {"beta", dtos(o.beta)},
                              {"var0", dtos(o.var0)},
                              {"t-max", dtos(o.t_max)},
                              {"grid", dtos(o.grid)}})
       << "\n";
    os << "t,sigma0,sigma1,sigma2\n";
    for (const double t : ts) {
        const SymCov s = glfe_cov(p, t);
        os << cell(t) << ',' << cell(s.a) << ',' << cell(s.b) << ',' << cell(s.c)
           << "\n";
    }
}

struct CycleOpts {
    int n = 8;
    double alpha = 2.0;
    double beta = 1.0;
    double var0 = 1.0;
    double t_max = 1.0;
    bool stationary = false;
    int max_r = -1;
    std::string out;
};

void cmd_cycle(const CycleOpts& o) {
    const GlfeParams p = make_glfe_params(o.alpha, o.beta, o.var0);
    const CycleCov c = o.stationary ? cycle_limit(o.n, p) : cycle_at(o.n, o.t_max, p);
    const int max_r = o.max_r < 0 ? o.n / 2 : o.max_r;
    if (max_r > o.n / 2)
        throw DomainError("max-r exceeds the cycle diameter n/2");

    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << csv_header("cycle", {{"n", std::to_string(o.n)},
                               {"alpha", dtos(o.alpha)},
                               {"beta", dtos(o.beta)},
                               {"var0", dtos(o.var0)},
                               {"t", o.stationary ? "stationary" : dtos(o.t_max)},
                               {"max-r", std::to_string(max_r)}})
       << "\n";
    os << "distance,value\n";
    for (int r = 0; r <= max_r; ++r)
        os << r << ',' << cell(cycle_cov_entry(c, 0, r)) << "\n";
}

struct CompareOpts {
    double alpha = 2.0;
    double beta = 1.0;
    double var0 = 1.0;
    double t_max = 10.0;
    double grid = 0.1;
    std::vector<double> window{2.0, 8.0};
    std::string out;
};

void cmd_compare(const CompareOpts& o) {
    const GlfeParams p = make_glfe_params(o.alpha, o.beta, o.var0);
    const GaussOnStar pi = make_gauss_on_star(stationary_pi(o.alpha, o.beta));
    IntegratorConfig cfg;
    cfg.grid_spacing = o.grid;
    const CovTrajectory traj = integrate(2, o.alpha, o.beta,
                                         make_symcov(2, o.var0, 0.0, 0.0), o.t_max, cfg);
    const std::vector<double> ts = uniform_grid(o.t_max, o.grid);

    const KvList kv = {{"alpha", dtos(o.alpha)},   {"beta", dtos(o.beta)},
                       {"var0", dtos(o.var0)},     {"t-max", dtos(o.t_max)},
                       {"grid", dtos(o.grid)},     {"window", dtos(o.window[0]) + "," + dtos(o.window[1])}};

    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << csv_header("compare", kv) << "\n";
    os << "t,glfe_a,glfe_b,glfe_c,mlfe_a,mlfe_b,mlfe_c,tv_glfe_pi,tv_mlfe_pi,"
          "tv_glfe_mlfe,kl_glfe_pi,sfe_gap,fisher,tail_bound\n";

    std::vector<double> tv_gp(ts.size()), tv_mp(ts.size()), tv_gm(ts.size()),
        kl_gp(ts.size()), gap(ts.size()), fisher(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        const SymCov gl = glfe_cov(p, t);
        const SymCov ml = marginal_at(traj, t);
        const GaussOnStar glm = make_gauss_on_star(gl);
        const GaussOnStar mlm = make_gauss_on_star(ml);
        tv_gp[i] = tv_upper_bound(pi, glm);
        tv_mp[i] = tv_upper_bound(pi, mlm);
        tv_gm[i] = tv_upper_bound(glm, mlm);
        kl_gp[i] = gauss_kl(glm, pi);
        gap[i] = sparse_free_energy_gap(glm, o.alpha, o.beta);
        fisher[i] = modified_fisher(glm, o.alpha, o.beta);
        os << cell(t) << ',' << cell(gl.a) << ',' << cell(gl.b) << ',' << cell(gl.c)
           << ',' << cell(ml.a) << ',' << cell(ml.b) << ',' << cell(ml.c) << ','
           << cell(tv_gp[i]) << ',' << cell(tv_mp[i]) << ',' << cell(tv_gm[i]) << ','
           << cell(kl_gp[i]) << ',' << cell(gap[i]) << ',' << cell(fisher[i]) << ','
           << cell(glfe_tail_bound(p, t)) << "\n";
    }

    const double lo = o.window[0];
    const double hi = o.window[1];
    ordered_json j;
    j["meta"] = meta_json("compare", kv);
    ordered_json fits;
    fits["tv_glfe_pi"] = fit_positive(ts, tv_gp, lo, hi);
    fits["tv_mlfe_pi"] = fit_positive(ts, tv_mp, lo, hi);
    fits["tv_glfe_mlfe"] = fit_positive(ts, tv_gm, lo, hi);
    fits["kl_glfe_pi"] = fit_positive(ts, kl_gp, lo, hi);
    fits["sfe_gap"] = fit_positive(ts, gap, lo, hi);
    fits["fisher"] = fit_positive(ts, fisher, lo, hi);
    j["fits"] = fits;
    std::cout << j.dump(2) << "\n";
}

Scheme parse_scheme(const std::string& mode) {
    if (mode == "euler") return Scheme::euler;
    if (mode == "exact" || mode == "exact-gaussian") return Scheme::exact_gaussian;
    throw DomainError("unknown scheme mode: " + mode + " (use euler or exact)");
}

struct SimCycleOpts {
    int n = 8;
    double alpha = 2.0;
    double beta = 1.0;
    double var0 = 1.0;
    double t_max = 1.0;
    double dt = 1e-3;
    std::int64_t paths = 200000;
    std::uint64_t seed = 0;
    std::string mode = "euler";
    std::string out;
};

void emit_sim_table(std::ostream& os, const SimEnsemble& ens,
                    const std::array<double, 3>& exact) {
    os << "distance,estimate,std_error,exact,z_score\n";
    for (int r = 0; r < 3; ++r) {
        const PairStat st = empirical_neighborhood_cov(ens, r);
        const double z = (st.estimate - exact[static_cast<std::size_t>(r)]) / st.std_error;
        os << r << ',' << cell(st.estimate) << ',' << cell(st.std_error) << ','
           << cell(exact[static_cast<std::size_t>(r)]) << ',' << cell(z) << "\n";
    }
}

void cmd_simulate_cycle(const SimCycleOpts& o) {
    const GlfeParams p = make_glfe_params(o.alpha, o.beta, o.var0);
    SimConfig cfg;
    cfg.n = o.n;
    cfg.paths = o.paths;
    cfg.dt = o.dt;
    cfg.t_end = o.t_max;
    cfg.seed = o.seed;
    cfg.scheme = parse_scheme(o.mode);

    const SimEnsemble ens = simulate_cycle(p, cfg);
    const CycleCov oracle = cycle_at(o.n, o.t_max, p);

    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << csv_header("simulate-cycle",
                     {{"n", std::to_string(o.n)},
                      {"alpha", dtos(o.alpha)},
                      {"beta", dtos(o.beta)},
                      {"var0", dtos(o.var0)},
                      {"t-max", dtos(o.t_max)},
                      {"dt", dtos(o.dt)},
                      {"paths", std::to_string(o.paths)},
                      {"seed", std::to_string(o.seed)},
                      {"mode", o.mode}})
       << "\n";
    emit_sim_table(os, ens,
                   {cycle_cov_entry(oracle, 0, 0), cycle_cov_entry(oracle, 0, 1),
                    cycle_cov_entry(oracle, 0, 2)});
}

struct SimMlfeOpts {
    int kappa = 2;
    double alpha = 2.0;
    double beta = 1.0;
    std::vector<double> init{1.0, 0.0, 0.0};
    double t_max = 1.0;
    double grid = 0.01;
    double dt = 1e-3;
    std::int64_t paths = 200000;
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_simulate_mlfe(const SimMlfeOpts& o) {
    const SymCov s0 = make_symcov(o.kappa, o.init[0], o.init[1], o.init[2]);
    IntegratorConfig icfg;
    icfg.grid_spacing = o.grid;
    const CovTrajectory traj = integrate(o.kappa, o.alpha, o.beta, s0, o.t_max, icfg);

    SimConfig cfg;
    cfg.paths = o.paths;
    cfg.dt = o.dt;
    cfg.t_end = o.t_max;
    cfg.seed = o.seed;
    cfg.scheme = Scheme::euler;

    const SimEnsemble ens = simulate_gmlfe(traj, cfg);
    const SymCov exact = marginal_at(traj, o.t_max);

    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << csv_header("simulate-mlfe",
                     {{"kappa", std::to_string(o.kappa)},
                      {"alpha", dtos(o.alpha)},
                      {"beta", dtos(o.beta)},
                      {"init", dtos(o.init[0]) + "," + dtos(o.init[1]) + "," + dtos(o.init[2])},
                      {"t-max", dtos(o.t_max)},
                      {"grid", dtos(o.grid)},
                      {"dt", dtos(o.dt)},
                      {"paths", std::to_string(o.paths)},
                      {"seed", std::to_string(o.seed)}})
       << "\n";
    emit_sim_table(os, ens, {entry_of(exact, 0), entry_of(exact, 1), entry_of(exact, 2)});
}

struct FunctionalsOpts {
    double alpha = 2.0;
    double beta = 1.0;
    std::vector<double> init{1.0, 0.0, 0.0};
};

void cmd_functionals(const FunctionalsOpts& o) {
    const GaussOnStar nu =
        make_gauss_on_star(make_symcov(2, o.init[0], o.init[1], o.init[2]));
    const GaussOnStar pi = make_gauss_on_star(stationary_pi(o.alpha, o.beta));
    const double kl = gauss_kl(nu, pi);

    ordered_json j;
    j["meta"] = meta_json("functionals",
                          {{"alpha", dtos(o.alpha)},
                           {"beta", dtos(o.beta)},
                           {"init", dtos(o.init[0]) + "," + dtos(o.init[1]) + "," + dtos(o.init[2])}});
    j["kl"] = kl;
    j["tv_bound"] = tv_upper_bound(pi, nu);
    j["sfe_gap"] = sparse_free_energy_gap(nu, o.alpha, o.beta);
    j["sfe_abs"] = sparse_free_energy_abs(nu, o.alpha, o.beta);
    j["fisher"] = modified_fisher(nu, o.alpha, o.beta);
    j["pinsker_tv"] = pinsker_tv_bound(kl);
    std::cout << j.dump(2) << "\n";
}

struct FitRateOpts {
    std::string in;
    std::string column = "value";
    std::vector<double> window{2.0, 8.0};
};

void cmd_fit_rate(const FitRateOpts& o) {
    std::ifstream file;
    std::istream* is = &std::cin;
    if (o.in != "-") {
        file.open(o.in);
        if (!file) throw DomainError("cannot open input file: " + o.in);
        is = &file;
    }

    std::vector<double> ts, vs;
    std::string line;
    int col = -1;
    while (std::getline(*is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) fields.push_back(item);
        if (fields.empty()) continue;
        if (col < 0) {
            // header row: locate the value column by name or 0-based index
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == o.column) col = static_cast<int>(i);
            if (col < 0) {
                try {
                    col = std::stoi(o.column);
                } catch (const std::exception&) {
                    throw DomainError("column not found: " + o.column);
                }
            }
            if (col < 1 || col >= static_cast<int>(fields.size()))
                throw DomainError("column not found: " + o.column);
            continue;
        }
        if (static_cast<int>(fields.size()) <= col)
            throw DomainError("short CSV row: " + line);
        ts.push_back(std::stod(fields[0]));
        vs.push_back(std::stod(fields[static_cast<std::size_t>(col)]));
    }
    if (col < 0) throw DomainError("input has no CSV header row");

    const RateFit fit = fit_rate(ts, vs, o.window[0], o.window[1]);
    ordered_json j;
    j["meta"] = meta_json("fit-rate", {{"in", o.in},
                                       {"column", o.column},
                                       {"window", dtos(o.window[0]) + "," + dtos(o.window[1])}});
    const ordered_json fj = ratefit_json(fit);
    for (const auto& [k, v] : fj.items()) j[k] = v;
    std::cout << j.dump(2) << "\n";
}

int cmd_verify(const std::string& mode, std::uint64_t seed) {
    const std::vector<CheckResult> results = run_checks(mode, seed);
    bool all_pass = true;

    ordered_json j;
    j["meta"] = meta_json("verify", {{"mode", mode}, {"seed", std::to_string(seed)}});
    ordered_json arr = ordered_json::array();
    for (const CheckResult& r : results) {
        all_pass = all_pass && r.pass;
        std::cerr << "criterion " << r.id << " [" << r.group << "] " << r.name << ": "
                  << (r.pass ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
        ordered_json e;
        e["id"] = r.id;
        e["group"] = r.group;
        e["name"] = r.name;
        e["pass"] = r.pass;
        e["detail"] = r.detail;
        arr.push_back(e);
    }
    j["results"] = arr;
    j["all_pass"] = all_pass;
    std::cout << j.dump(2) << "\n";
    return all_pass ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    int exit_code = 0;
    try {
        CLI::App app{"Gaussian local-field equation laboratory"};
        app.require_subcommand(1);
        const std::uint64_t seed0 = default_seed();

        double st_alpha = 2.0, st_beta = 1.0;
        CLI::App* st = app.add_subcommand("stationary", "Stationary star covariance and precision");
        st->add_option("--alpha", st_alpha, "drift diagonal")->required();
        st->add_option("--beta", st_beta, "drift interaction")->required();
        st->callback([&] { cmd_stationary(st_alpha, st_beta); });

        TrajectoryOpts ric;
        CLI::App* rc = app.add_subcommand("riccati", "Integrate the covariance Riccati flow (CSV t,a,b,c)");
        rc->add_option("--kappa", ric.kappa, "leaf count");
        rc->add_option("--alpha", ric.alpha, "drift diagonal")->required();
        rc->add_option("--beta", ric.beta, "drift interaction")->required();
        rc->add_option("--init", ric.init, "initial covariance a,b,c")->delimiter(',')->expected(3);
        rc->add_option("--t-max", ric.t_max, "final time");
        rc->add_option("--grid", ric.grid, "output spacing");
        rc->add_option("--out", ric.out, "CSV output path (default stdout)");
        rc->callback([&] { cmd_riccati(ric); });

        GlfeOpts gl;
        CLI::App* gc = app.add_subcommand("glfe", "Exact two-star flow covariance (CSV t,sigma0,sigma1,sigma2)");
        gc->add_option("--alpha", gl.alpha, "drift diagonal")->required();
        gc->add_option("--beta", gl.beta, "drift interaction")->required();
        gc->add_option("--var0", gl.var0, "initial per-vertex variance");
        gc->add_option("--t-max", gl.t_max, "final time");
        gc->add_option("--grid", gl.grid, "output spacing");
        gc->add_option("--out", gl.out, "CSV output path (default stdout)");
        gc->callback([&] { cmd_glfe(gl); });

        CycleOpts cy;
        CLI::App* cc = app.add_subcommand("cycle", "n-cycle covariance by distance (CSV distance,value)");
        cc->add_option("--n", cy.n, "cycle size (even, >= 4)");
        cc->add_option("--alpha", cy.alpha, "drift diagonal")->required();
        cc->add_option("--beta", cy.beta, "drift interaction")->required();
        cc->add_option("--var0", cy.var0, "initial per-vertex variance");
        cc->add_option("--t-max", cy.t_max, "evaluation time");
        cc->add_flag("--stationary", cy.stationary, "use the infinite-time limit");
        cc->add_option("--max-r", cy.max_r, "largest distance to emit (default n/2)");
        cc->add_option("--out", cy.out, "CSV output path (default stdout)");
        cc->callback([&] { cmd_cycle(cy); });

        CompareOpts cp;
        CLI::App* pc = app.add_subcommand(
            "compare", "Exact flow vs Riccati flow table (CSV) with rate-fit summary (JSON)");
        pc->add_option("--alpha", cp.alpha, "drift diagonal")->required();
        pc->add_option("--beta", cp.beta, "drift interaction")->required();
        pc->add_option("--var0", cp.var0, "shared isotropic initial variance");
        pc->add_option("--t-max", cp.t_max, "final time");
        pc->add_option("--grid", cp.grid, "output spacing");
        pc->add_option("--window", cp.window, "rate-fit window lo,hi")->delimiter(',')->expected(2);
        pc->add_option("--out", cp.out, "CSV output path")->required();
        pc->callback([&] { cmd_compare(cp); });

        SimCycleOpts sc;
        sc.seed = seed0;
        CLI::App* scc = app.add_subcommand("simulate-cycle",
                                           "Monte Carlo n-cycle SDE vs spectral oracle");
        scc->add_option("--n", sc.n, "cycle size (even, >= 4)");
        scc->add_option("--alpha", sc.alpha, "drift diagonal")->required();
        scc->add_option("--beta", sc.beta, "drift interaction")->required();
        scc->add_option("--var0", sc.var0, "initial per-vertex variance");
        scc->add_option("--t-max", sc.t_max, "simulation end time");
        scc->add_option("--dt", sc.dt, "step size");
        scc->add_option("--paths", sc.paths, "number of sample paths");
        scc->add_option("--seed", sc.seed, "RNG seed (default LFE_LAB_SEED or built-in)");
        scc->add_option("--mode", sc.mode, "scheme: euler or exact");
        scc->add_option("--out", sc.out, "CSV output path (default stdout)");
        scc->callback([&] { cmd_simulate_cycle(sc); });

        SimMlfeOpts sm;
        sm.seed = seed0;
        CLI::App* smc = app.add_subcommand("simulate-mlfe",
                                           "Monte Carlo star SDE under the Riccati drift vs marginal oracle");
        smc->add_option("--kappa", sm.kappa, "leaf count");
        smc->add_option("--alpha", sm.alpha, "drift diagonal")->required();
        smc->add_option("--beta", sm.beta, "drift interaction")->required();
        smc->add_option("--init", sm.init, "initial covariance a,b,c")->delimiter(',')->expected(3);
        smc->add_option("--t-max", sm.t_max, "simulation end time");
        smc->add_option("--grid", sm.grid, "trajectory output spacing");
        smc->add_option("--dt", sm.dt, "step size");
        smc->add_option("--paths", sm.paths, "number of sample paths");
        smc->add_option("--seed", sm.seed, "RNG seed (default LFE_LAB_SEED or built-in)");
        smc->add_option("--out", sm.out, "CSV output path (default stdout)");
        smc->callback([&] { cmd_simulate_mlfe(sm); });

        FunctionalsOpts fn;
        CLI::App* fc = app.add_subcommand("functionals",
                                          "Gaussian information functionals of one star covariance (JSON)");
        fc->add_option("--alpha", fn.alpha, "drift diagonal")->required();
        fc->add_option("--beta", fn.beta, "drift interaction")->required();
        fc->add_option("--init", fn.init, "measure covariance a,b,c")->required()->delimiter(',')->expected(3);
        fc->callback([&] { cmd_functionals(fn); });

        FitRateOpts fr;
        CLI::App* frc = app.add_subcommand("fit-rate",
                                           "Exponential rate fit of a positive CSV column (JSON)");
        frc->add_option("--in", fr.in, "CSV input path, or - for stdin")->required();
        frc->add_option("--column", fr.column, "value column name or index (time = first column)");
        frc->add_option("--window", fr.window, "fit window lo,hi")->delimiter(',')->expected(2);
        frc->callback([&] { cmd_fit_rate(fr); });

        std::string vmode = "all";
        std::uint64_t vseed = seed0;
        CLI::App* vc = app.add_subcommand("verify", "Run acceptance criteria (JSON report; exit 4 on failure)");
        vc->add_option("--mode", vmode, "all, algebra, convergence or montecarlo");
        vc->add_option("--seed", vseed, "RNG seed (default LFE_LAB_SEED or built-in)");
        vc->callback([&] { exit_code = cmd_verify(vmode, vseed); });

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }
        return exit_code;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
