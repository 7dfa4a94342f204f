// Command-line front end: every experiment as a subcommand, CSV out.
// Exit codes: 0 ok, 1 failed check, 2 bad configuration, 3 numeric domain.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fenergy/born_infeld.hpp"
#include "fenergy/chern.hpp"
#include "fenergy/csv.hpp"
#include "fenergy/energy.hpp"
#include "fenergy/errors.hpp"
#include "fenergy/variation.hpp"
#include "fenergy/version.hpp"

using namespace fenergy;

namespace {

int g_status = 0;

struct OutFile {
    std::ofstream f;
    std::ostream* os = &std::cout;
    explicit OutFile(const std::string& path) {
        if (!path.empty()) {
            f.open(path);
            if (!f) throw InvalidParameter("cannot open output file " + path);
            os = &f;
        }
    }
};

FProfile profile_by_name(const std::string& name) {
    if (name == "identity") return FProfile::identity();
    if (name == "bi-plus") return FProfile::bi_plus();
    if (name == "bi-minus") return FProfile::bi_minus();
    if (name == "exp-minus-one") return FProfile::exp_minus_one();
    if (name.rfind("p-power:", 0) == 0) return FProfile::p_power(std::stod(name.substr(8)));
    throw InvalidParameter("unknown profile '" + name +
                           "' (identity, p-power:<p>, bi-plus, bi-minus, exp-minus-one)");
}

RadialManifold manifold_by_name(const std::string& name, int m) {
    if (name == "euclidean") return RadialManifold::euclidean(m);
    if (name.rfind("hyperbolic:", 0) == 0)
        return RadialManifold::hyperbolic(m, std::stod(name.substr(11)));
    throw InvalidParameter("unknown manifold '" + name +
                           "' (euclidean, hyperbolic:<beta>)");
}

std::pair<double, double> parse_range(const std::string& s) {
    const auto pos = s.find(':');
    if (pos == std::string::npos) throw InvalidParameter("range must look like a:b");
    return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ','))
        if (!cell.empty()) out.push_back(std::stod(cell));
    if (out.empty()) throw InvalidParameter("empty list");
    return out;
}

std::vector<double> log_radii(double a, double b, int n) {
    if (!(a > 0.0) || !(a < b) || n < 2) throw InvalidParameter("need 0 < rho-min < rho-max, n >= 2");
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i)
        r[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    return r;
}

std::string fmt(double v) { return CsvWriter::format(v); }

// ---------------------------------------------------------------- profile --

struct ProfileOpts {
    std::string name = "identity";
    std::string out;
};

void run_profile(const ProfileOpts& o) {
    const FProfile prof = profile_by_name(o.name);
    validate_profile(prof);
    const Degree d = f_degree(prof);
    const Degree l = f_lower_degree(prof);
    const DegreeBounds nb = numeric_degree_bounds(prof);
    OutFile of(o.out);
    CsvWriter w(*of.os, "cmd=profile name=" + o.name, 0);
    w.header({"name", "cap", "d_f", "d_f_is_estimate", "l_f", "l_f_is_estimate",
              "d_f_numeric", "l_f_numeric", "t_at_sup", "t_at_inf"});
    w.row_mixed({o.name, fmt(prof.cap), fmt(d.value), d.estimate ? "1" : "0", fmt(l.value),
                 l.estimate ? "1" : "0", fmt(nb.sup_est), fmt(nb.inf_est), fmt(nb.t_at_sup),
                 fmt(nb.t_at_inf)});
}

// -------------------------------------------------------------- exponents --

struct RegimeOpts {
    std::string tag = "flat";
    double alpha = 1.0, beta = 1.0;
    double A = 0.0, B = 0.0, eps = 1.0, q = 1.0;

    CurvatureRegime build() const {
        if (tag == "pinched") return CurvatureRegime::pinched_neg(alpha, beta);
        if (tag == "flat") return CurvatureRegime::flat();
        if (tag == "eps-decay") return CurvatureRegime::eps_decay(A, B, eps);
        if (tag == "poly") return CurvatureRegime::poly_neg(A, B, q);
        throw InvalidParameter("unknown regime '" + tag +
                               "' (pinched, flat, eps-decay, poly)");
    }
    std::string describe() const {
        std::ostringstream ss;
        ss << "regime=" << tag;
        if (tag == "pinched") ss << " alpha=" << fmt(alpha) << " beta=" << fmt(beta);
        if (tag == "eps-decay") ss << " A=" << fmt(A) << " B=" << fmt(B) << " eps=" << fmt(eps);
        if (tag == "poly") ss << " A=" << fmt(A) << " B=" << fmt(B) << " q=" << fmt(q);
        return ss.str();
    }
};

struct ExponentOpts {
    RegimeOpts regime;
    int m = 4, p = 1;
    double dF = 1.0;
    std::string out;
};

void run_exponents(const ExponentOpts& o) {
    const CurvatureRegime regime = o.regime.build();
    const ExponentResult res = vanishing_exponent(regime, o.m, o.p, o.dF);
    OutFile of(o.out);
    CsvWriter w(*of.os,
                "cmd=exponents " + o.regime.describe() + " m=" + std::to_string(o.m) +
                    " p=" + std::to_string(o.p) + " dF=" + fmt(o.dF),
                0);
    w.header({"case", "m", "p", "d_f", "value", "ratio_exponent", "admissible", "punctured"});
    w.row_mixed({regime.case_name(), std::to_string(o.m), std::to_string(o.p), fmt(o.dF),
                 fmt(res.value), fmt(res.ratio_exponent), res.admissible ? "1" : "0",
                 res.punctured ? "1" : "0"});
}

// --------------------------------------------------------------- monotone --

struct MonotoneOpts {
    RegimeOpts regime;
    int m = 4, p = 1;
    std::string profile = "identity";
    std::string field = "constant";
    std::string man = "euclidean";
    double rho_min = 0.1, rho_max = 10.0;
    int n = 50;
    bool assert_conservative = false;
    std::string out;
};

RadialField field_by_name(const std::string& name, const RadialManifold& man, int p,
                          bool assert_conservative) {
    if (name == "zero") return RadialField::zero(man, p, 1);
    if (name == "constant" || name == "du-x1") return RadialField::constant_norm(man, 1.0);
    if (name.rfind("constant:", 0) == 0)
        return RadialField::constant_norm(man, std::stod(name.substr(9)));
    if (name.rfind("round:", 0) == 0)
        return RadialField::tangential_round(man, std::stod(name.substr(6)));
    if (name == "cubic") return RadialField::radial_cubic(man);
    if (name.rfind("table:", 0) == 0) {
        std::ifstream in(name.substr(6));
        if (!in) throw InvalidParameter("cannot open table file " + name.substr(6));
        std::vector<std::pair<double, double>> rows;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto pos = line.find(',');
            if (pos == std::string::npos) continue;
            rows.emplace_back(std::stod(line.substr(0, pos)), std::stod(line.substr(pos + 1)));
        }
        return RadialField::from_norm_table(man, p, 1, std::move(rows), assert_conservative);
    }
    throw InvalidParameter("unknown field '" + name +
                           "' (zero, constant[:norm], du-x1, round:<c>, cubic, table:<csv>)");
}

void run_monotone(const MonotoneOpts& o) {
    const RadialManifold man = manifold_by_name(o.man, o.m);
    const FProfile prof = profile_by_name(o.profile);
    const RadialField fld = field_by_name(o.field, man, o.p, o.assert_conservative);
    const auto radii = log_radii(o.rho_min, o.rho_max, o.n);
    const MonotonicityReport rep = monotonicity_experiment(fld, prof, o.regime.build(), radii);

    OutFile of(o.out);
    CsvWriter w(*of.os,
                "cmd=monotone " + o.regime.describe() + " m=" + std::to_string(o.m) + " p=" +
                    std::to_string(o.p) + " profile=" + o.profile + " field=" + o.field +
                    " man=" + o.man + " rho=" + fmt(o.rho_min) + ":" + fmt(o.rho_max) +
                    " n=" + std::to_string(o.n),
                0);
    std::ostringstream meta;
    meta << "lambda=" << fmt(rep.exponent.value) << " ratio_exponent="
         << fmt(rep.exponent.ratio_exponent) << " punctured=" << (rep.exponent.punctured ? 1 : 0)
         << " monotone=" << (rep.monotone ? 1 : 0) << " worst_violation="
         << fmt(rep.worst_violation) << " differential_ok=" << (rep.differential_ok ? 1 : 0)
         << " worst_differential=" << fmt(rep.worst_differential) << " base_condition_ok="
         << (rep.base_condition_ok ? 1 : 0);
    w.comment(meta.str());
    w.header({"rho", "E", "ratio", "dE_drho", "lower_bound_lambda_over_rho"});
    for (size_t i = 0; i < rep.radii.size(); ++i)
        w.row({rep.radii[i], rep.energies[i], rep.ratios[i], rep.dE_drho[i],
               rep.exponent.ratio_exponent * rep.energies[i] / rep.radii[i]});
    if (!rep.monotone || !rep.differential_ok || !rep.base_condition_ok) g_status = 1;
}

// ----------------------------------------------------------- stokes-check --

struct StokesOpts {
    std::string field = "quad";
    std::string profile = "identity";
    int n = 129;
    std::string box = "-0.5:0.5";
    double tol = 0.02;
    std::string out;
};

GridField stokes_field_by_name(const std::string& name, const GridSpec& spec) {
    if (name == "quad")
        return GridField::sample(spec, 1, 1, [](const std::array<double, 3>& x) {
            PointForm w(2, 1, 1);
            w.at(0, 0) = 2.0 * x[0];
            w.at(1, 0) = -2.0 * x[1];
            return w;
        });
    if (name == "rot")
        return GridField::sample(spec, 1, 1, [](const std::array<double, 3>& x) {
            PointForm w(2, 1, 1);
            w.at(0, 0) = -x[1];
            w.at(1, 0) = x[0];
            return w;
        });
    if (name == "gauss")
        return GridField::sample(spec, 1, 1, [](const std::array<double, 3>& x) {
            PointForm w(2, 1, 1);
            const double g = std::exp(-(x[0] * x[0] + x[1] * x[1]));
            w.at(0, 0) = -2.0 * x[0] * g;
            w.at(1, 0) = -2.0 * x[1] * g;
            return w;
        });
    throw InvalidParameter("unknown field '" + name + "' (quad, rot, gauss)");
}

void run_stokes(const StokesOpts& o) {
    GridSpec spec(2, {o.n, o.n, 1}, {-1.0, -1.0, 0.0}, {1.0, 1.0, 0.0});
    const GridField w = stokes_field_by_name(o.field, spec);
    const FProfile prof = profile_by_name(o.profile);
    const auto [blo, bhi] = parse_range(o.box);
    const StokesReport rep =
        stokes_identity_check(w, prof, {blo, blo, 0.0}, {bhi, bhi, 0.0});
    OutFile of(o.out);
    CsvWriter cw(*of.os,
                 "cmd=stokes-check field=" + o.field + " profile=" + o.profile +
                     " n=" + std::to_string(o.n) + " box=" + o.box,
                 0);
    cw.header({"field", "profile", "lhs", "rhs", "rel_err"});
    cw.row_mixed({o.field, o.profile, fmt(rep.lhs), fmt(rep.rhs), fmt(rep.rel_err)});
    if (rep.rel_err > o.tol) g_status = 1;
}

// --------------------------------------------------------------- varcheck --

struct VarcheckOpts {
    unsigned long seed = 12345;
    int trials = 10;
    int n = 64;
    std::string profile = "identity";
    double tol = 1e-3;
    std::string out;
};

void run_varcheck(const VarcheckOpts& o) {
    GridSpec spec(2, {o.n, o.n, 1}, {-1.0, -1.0, 0.0}, {1.0, 1.0, 0.0});
    const FProfile prof = profile_by_name(o.profile);
    std::mt19937 rng(o.seed);
    std::uniform_real_distribution<double> amp(0.2, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    std::uniform_int_distribution<int> mode(1, 2);

    OutFile of(o.out);
    CsvWriter w(*of.os,
                "cmd=varcheck profile=" + o.profile + " trials=" + std::to_string(o.trials) +
                    " n=" + std::to_string(o.n) + " tol=" + fmt(o.tol),
                o.seed);
    w.header({"trial", "lhs", "rhs", "abs_err", "rel_err", "extrapolation_err"});

    const double h = spec.h(0);
    const double s0 = 1.0 - 4.0 * h;  // eta support stays off a 4-node margin
    bool all_ok = true;
    for (int t = 0; t < o.trials; ++t) {
        struct Mode {
            double a, kx, ky, ph;
        };
        std::vector<Mode> ms(4), me(3);
        for (auto& mm : ms) mm = {amp(rng), double(mode(rng)), double(mode(rng)), phase(rng)};
        for (auto& mm : me) mm = {amp(rng), double(mode(rng)), double(mode(rng)), phase(rng)};
        auto smooth = [](const std::vector<Mode>& modes, double x, double y) {
            double v = 0.0;
            for (const auto& mm : modes)
                v += mm.a * std::sin(mm.kx * x + mm.ky * y + mm.ph);
            return v;
        };
        const GridField sigma = GridField::sample_scalar(
            spec, [&](const std::array<double, 3>& x) { return smooth(ms, x[0], x[1]); });
        const GridField eta = GridField::sample_scalar(
            spec, [&](const std::array<double, 3>& x) {
                return bump1(x[0] / s0) * bump1(x[1] / s0) * smooth(me, x[0], x[1]);
            });
        const VariationReport rep = first_variation_check(sigma, eta, prof);
        w.row({double(t), rep.lhs, rep.rhs, rep.abs_err, rep.rel_err, rep.extrapolation_err});
        if (rep.rel_err > o.tol) all_ok = false;
    }
    if (!all_ok) g_status = 1;
}

// --------------------------------------------------------------------- bi --

struct BiSolveOpts {
    std::string sign = "plus";
    int m = 2;
    double C = 1.0;
    std::string range = "2:4";
    int n = 1024;
    std::string out;
    std::string graph_out;
    std::string graph_box;
    int graph_n = 129;
};

BiSign sign_by_name(const std::string& s) {
    if (s == "plus") return BiSign::Plus;
    if (s == "minus") return BiSign::Minus;
    throw InvalidParameter("sign must be plus or minus");
}

void run_bi_solve(const BiSolveOpts& o) {
    const auto [a, b] = parse_range(o.range);
    const RadialGraphSolution sol = solve_radial(o.m, sign_by_name(o.sign), o.C, a, b, o.n);
    OutFile of(o.out);
    CsvWriter w(*of.os,
                "cmd=bi-solve sign=" + o.sign + " m=" + std::to_string(o.m) + " C=" +
                    fmt(o.C) + " r=" + o.range + " n=" + std::to_string(o.n),
                0);
    std::ostringstream meta;
    meta << "first_integral_residual=" << fmt(first_integral_residual(sol))
         << " pde_residual=" << fmt(pde_residual(sol));
    w.comment(meta.str());
    w.header({"r", "slope", "u"});
    for (size_t i = 0; i < sol.r.size(); ++i) w.row({sol.r[i], sol.slope[i], sol.u[i]});

    if (!o.graph_out.empty()) {
        if (o.graph_box.empty()) throw InvalidParameter("--graph-out needs --graph-box");
        std::array<double, 3> lo{0, 0, 0}, hi{0, 0, 0};
        std::stringstream ss(o.graph_box);
        std::string part;
        int axis = 0;
        while (std::getline(ss, part, ',') && axis < o.m) {
            const auto [lo_a, hi_a] = parse_range(part);
            lo[axis] = lo_a;
            hi[axis] = hi_a;
            ++axis;
        }
        if (axis != o.m) throw InvalidParameter("--graph-box needs one a:b range per axis");
        std::array<int, 3> nn{1, 1, 1};
        for (int ax = 0; ax < o.m; ++ax) nn[ax] = o.graph_n;
        GridSpec spec(o.m, nn, lo, hi);
        const GridField g = sample_graph(sol, spec);
        std::ofstream gout(o.graph_out);
        if (!gout) throw InvalidParameter("cannot open " + o.graph_out);
        write_gridfield_csv(gout, g,
                            "cmd=bi-solve-graph sign=" + o.sign + " m=" + std::to_string(o.m) +
                                " C=" + fmt(o.C),
                            0);
    }
}

struct BiDualizeOpts {
    std::string in;
    int sign = 1;
    std::string sigma_out;
    std::string out;
};

void run_bi_dualize(const BiDualizeOpts& o) {
    std::ifstream in(o.in);
    if (!in) throw InvalidParameter("cannot open " + o.in);
    const GridField omega = read_gridfield_csv(in);
    const DualityPair pair = dualize(omega, o.sign);
    const DualityDensityReport dens = duality_density_check(pair);
    const double rt = duality_roundtrip_residual(pair);
    if (!o.sigma_out.empty()) {
        std::ofstream sout(o.sigma_out);
        if (!sout) throw InvalidParameter("cannot open " + o.sigma_out);
        write_gridfield_csv(sout, pair.sigma, "cmd=bi-dualize-sigma in=" + o.in, 0);
    }
    OutFile of(o.out);
    CsvWriter w(*of.os, "cmd=bi-dualize in=" + o.in + " sign=" + std::to_string(o.sign), 0);
    w.header({"closedness_residual", "relation_residual", "roundtrip_residual",
              "density_relation_residual", "inequality_violation"});
    w.row({pair.closedness_residual, pair.relation_residual, rt, dens.relation_residual,
           dens.inequality_violation});
}

struct BiBoundOpts {
    std::string in;
    double rho = 4.0;
    double el_tol = 1e-3;
    bool radial = false;
    std::string sign = "plus";
    int m = 2;
    double C = 1.0;
    std::string out;
};

void run_bi_bound(const BiBoundOpts& o) {
    GraphBoundReport rep;
    std::string params;
    if (o.radial) {
        RadialGraphSolution sol;
        sol.m = o.m;
        sol.sign = sign_by_name(o.sign);
        sol.C = o.C;
        rep = graph_energy_bound_radial(sol, o.rho);
        params = "cmd=bi-bound radial=1 sign=" + o.sign + " m=" + std::to_string(o.m) +
                 " C=" + fmt(o.C) + " rho=" + fmt(o.rho);
    } else {
        std::ifstream in(o.in);
        if (!in) throw InvalidParameter("cannot open " + o.in);
        const GridField w = read_gridfield_csv(in);
        rep = graph_energy_bound_check(w, o.rho, o.el_tol);
        params = "cmd=bi-bound in=" + o.in + " rho=" + fmt(o.rho);
    }
    OutFile of(o.out);
    CsvWriter w(*of.os, params, 0);
    w.header({"measured", "bound", "ok"});
    w.row_mixed({fmt(rep.measured), fmt(rep.bound), rep.ok ? "1" : "0"});
    if (!rep.ok) g_status = 1;
}

// ------------------------------------------------------------------ chern --

struct ChernOpts {
    std::string in;
    std::string preset;
    double preset_h = 1.0 / 64.0;
    std::string plane = "0,1";
    std::string x0 = "0,0,0";
    std::string radii;
    double r0 = 1.0;
    double C1 = 1.0;
    std::string man = "euclidean";
    int m = 3;
    std::string out;
};

GridField chern_input_field(const ChernOpts& o) {
    if (!o.in.empty()) {
        std::ifstream in(o.in);
        if (!in) throw InvalidParameter("cannot open " + o.in);
        return read_gridfield_csv(in);
    }
    if (o.preset.rfind("catenoid", 0) == 0) {
        const double h = o.preset_h;
        const int nx = static_cast<int>(std::lround(3.2 / h)) + 1;
        const int ny = static_cast<int>(std::lround(3.2 / h)) + 1;
        GridSpec spec(2, {nx, ny, 1}, {1.4, -1.6, 0.0}, {4.6, 1.6, 0.0});
        return GridField::sample_scalar(spec, [](const std::array<double, 3>& x) {
            return std::acosh(std::hypot(x[0], x[1]));
        });
    }
    if (o.preset.rfind("dome:", 0) == 0) {
        const double R = std::stod(o.preset.substr(5));
        const double half = 0.85 * R;
        const double h = o.preset_h;
        const int n = static_cast<int>(std::lround(2.0 * half / h)) + 1;
        GridSpec spec(2, {n, n, 1}, {-half, -half, 0.0}, {half, half, 0.0});
        return GridField::sample_scalar(spec, [R](const std::array<double, 3>& x) {
            return std::sqrt(R * R - x[0] * x[0] - x[1] * x[1]);
        });
    }
    if (o.preset == "zero") {
        const double h = o.preset_h;
        const int n = static_cast<int>(std::lround(4.0 / h)) + 1;
        GridSpec spec(2, {n, n, 1}, {-2.0, -2.0, 0.0}, {2.0, 2.0, 0.0});
        return GridField(spec, 0, 1);
    }
    throw InvalidParameter("need --in or --preset (catenoid, dome:<R>, zero)");
}

void write_flux_csv(const FluxReport& rep, const std::string& params, const std::string& out,
                    bool with_gamma) {
    OutFile of(out);
    CsvWriter w(*of.os, params, 0);
    std::ostringstream meta;
    meta << "extrapolated_c=" << fmt(rep.extrapolated_c);
    if (with_gamma) meta << " gamma_sublinear=" << (rep.gamma_sublinear ? 1 : 0);
    w.comment(meta.str());
    std::vector<std::string> cols = {"r", "c_est", "bound", "satisfied"};
    if (with_gamma) cols.push_back("sup_gamma");
    w.header(cols);
    bool all_ok = true;
    for (size_t i = 0; i < rep.radii.size(); ++i) {
        std::vector<std::string> row = {fmt(rep.radii[i]), fmt(rep.c_est[i]),
                                        fmt(rep.bound[i]), rep.satisfied[i] ? "1" : "0"};
        if (with_gamma) row.push_back(fmt(rep.sup_gamma[i]));
        w.row_mixed(row);
        if (!rep.satisfied[i]) all_ok = false;
    }
    if (!all_ok) g_status = 1;
}

std::array<int, 2> parse_plane(const std::string& s) {
    const auto vals = parse_list(s);
    if (vals.size() != 2) throw InvalidParameter("plane needs two axes");
    return {static_cast<int>(vals[0]), static_cast<int>(vals[1])};
}

std::array<double, 3> parse_point(const std::string& s) {
    const auto vals = parse_list(s);
    std::array<double, 3> x{0, 0, 0};
    for (size_t i = 0; i < vals.size() && i < 3; ++i) x[i] = vals[i];
    return x;
}

void run_chern_flux(const ChernOpts& o) {
    const GridField w = chern_input_field(o);
    const FluxReport rep =
        cmc_flux(w, parse_plane(o.plane), parse_point(o.x0), parse_list(o.radii));
    write_flux_csv(rep,
                   "cmd=chern-flux preset=" + (o.preset.empty() ? "-" : o.preset) +
                       " in=" + (o.in.empty() ? "-" : o.in) + " plane=" + o.plane +
                       " x0=" + o.x0 + " radii=" + o.radii,
                   o.out, false);
}

void run_chern_punctured(const ChernOpts& o) {
    const GridField w = chern_input_field(o);
    const FluxReport rep = punctured_flux(w, parse_plane(o.plane), parse_point(o.x0), o.r0,
                                          parse_list(o.radii), o.C1);
    write_flux_csv(rep,
                   "cmd=chern-punctured preset=" + (o.preset.empty() ? "-" : o.preset) +
                       " in=" + (o.in.empty() ? "-" : o.in) + " plane=" + o.plane + " x0=" +
                       o.x0 + " r0=" + fmt(o.r0) + " C1=" + fmt(o.C1) + " radii=" + o.radii,
                   o.out, false);
}

void run_chern_spacelike(const ChernOpts& o) {
    const GridField w = chern_input_field(o);
    const FluxReport rep =
        spacelike_flux(w, parse_plane(o.plane), parse_point(o.x0), parse_list(o.radii));
    write_flux_csv(rep,
                   "cmd=chern-spacelike preset=" + (o.preset.empty() ? "-" : o.preset) +
                       " in=" + (o.in.empty() ? "-" : o.in) + " plane=" + o.plane +
                       " x0=" + o.x0 + " radii=" + o.radii,
                   o.out, true);
}

void run_chern_doubling(const ChernOpts& o) {
    const RadialManifold man = manifold_by_name(o.man, o.m);
    const DoublingReport rep = doubling_diagnostic(man, parse_list(o.radii));
    OutFile of(o.out);
    CsvWriter w(*of.os,
                "cmd=chern-doubling man=" + o.man + " m=" + std::to_string(o.m) +
                    " radii=" + o.radii,
                0);
    std::ostringstream meta;
    meta << "sup_ratio=" << fmt(rep.sup_ratio) << " bounded=" << (rep.bounded ? 1 : 0);
    w.comment(meta.str());
    w.header({"r", "ratio"});
    for (size_t i = 0; i < rep.radii.size(); ++i) w.row({rep.radii[i], rep.ratio[i]});
}

// ----------------------------------------------------------------- growth --

struct GrowthOpts {
    std::string psi = "logq:1";
    std::string energy = "log";
    double lambda = 1.0;
    double rho_min = 10.0, rho_max = 1e6;
    int n = 40;
    std::string out;
};

void run_growth(const GrowthOpts& o) {
    std::function<double(double)> psi;
    if (o.psi == "one") {
        psi = [](double) { return 1.0; };
    } else if (o.psi.rfind("logq:", 0) == 0) {
        const double q = std::stod(o.psi.substr(5));
        psi = [q](double r) { return std::pow(std::log(r), q); };
    } else {
        throw InvalidParameter("unknown gauge '" + o.psi + "' (one, logq:<q>)");
    }
    std::function<double(double)> en;
    if (o.energy == "log") {
        en = [](double r) { return std::log(r); };
    } else if (o.energy.rfind("pow:", 0) == 0) {
        const double a = std::stod(o.energy.substr(4));
        en = [a](double r) { return std::pow(r, a); };
    } else {
        throw InvalidParameter("unknown energy model '" + o.energy + "' (log, pow:<a>)");
    }
    const auto radii = log_radii(o.rho_min, o.rho_max, o.n);
    std::vector<std::pair<double, double>> samples;
    for (double r : radii) samples.emplace_back(r, en(r));
    const GrowthVerdict rep = growth_classify(samples, psi, o.lambda);
    OutFile of(o.out);
    CsvWriter w(*of.os,
                "cmd=growth psi=" + o.psi + " energy=" + o.energy + " lambda=" +
                    fmt(o.lambda) + " rho=" + fmt(o.rho_min) + ":" + fmt(o.rho_max) +
                    " n=" + std::to_string(o.n),
                0);
    w.header({"psi_divergence", "divergence_slope", "energy_over_psi_bounded",
              "little_o_lambda"});
    w.row_mixed({rep.psi_divergence == PsiVerdict::Diverging ? "DIVERGING" : "CONVERGING",
                 fmt(rep.divergence_slope), rep.energy_over_psi_bounded ? "1" : "0",
                 rep.little_o_lambda ? "1" : "0"});
}

void add_regime_flags(CLI::App* cmd, RegimeOpts& r) {
    cmd->add_option("--regime,--case", r.tag, "pinched, flat, eps-decay, poly");
    cmd->add_option("--alpha", r.alpha, "pinched regime: lower curvature scale");
    cmd->add_option("--beta", r.beta, "pinched regime: upper curvature scale");
    cmd->add_option("--A", r.A, "decay/poly regime: lower bound constant");
    cmd->add_option("--B", r.B, "decay/poly regime: upper bound constant");
    cmd->add_option("--eps", r.eps, "decay regime: decay exponent");
    cmd->add_option("--q", r.q, "poly regime: growth exponent");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for F-energies, stress tensors and flux bounds"};
    app.set_config("--config", "", "key=value config file; flags override it");
    app.require_subcommand(1);

    ProfileOpts po;
    auto* cprof = app.add_subcommand("profile", "profile degrees and numeric bounds");
    cprof->add_option("--name", po.name, "identity, p-power:<p>, bi-plus, bi-minus, exp-minus-one");
    cprof->add_option("--out", po.out, "output CSV path (default stdout)");
    cprof->callback([&] { run_profile(po); });

    ExponentOpts eo;
    auto* cexp = app.add_subcommand("exponents", "vanishing exponent for a curvature regime");
    add_regime_flags(cexp, eo.regime);
    cexp->add_option("--m", eo.m, "manifold dimension");
    cexp->add_option("--p", eo.p, "form degree");
    cexp->add_option("--dF", eo.dF, "profile degree d_F");
    cexp->add_option("--out", eo.out, "output CSV path");
    cexp->callback([&] { run_exponents(eo); });

    MonotoneOpts mo;
    auto* cmono = app.add_subcommand("monotone", "ball-energy ratio monotonicity experiment");
    add_regime_flags(cmono, mo.regime);
    cmono->add_option("--m", mo.m, "manifold dimension");
    cmono->add_option("--p", mo.p, "form degree");
    cmono->add_option("--profile", mo.profile, "profile id");
    cmono->add_option("--field", mo.field, "zero, constant[:norm], du-x1, round:<c>, cubic, table:<csv>");
    cmono->add_option("--man", mo.man, "euclidean or hyperbolic:<beta>");
    cmono->add_option("--rho-min", mo.rho_min, "smallest radius");
    cmono->add_option("--rho-max", mo.rho_max, "largest radius");
    cmono->add_option("--n", mo.n, "number of radii (log-spaced)");
    cmono->add_flag("--assert-conservative", mo.assert_conservative,
                    "trust a table field to be conservative");
    cmono->add_option("--out", mo.out, "output CSV path");
    cmono->callback([&] { run_monotone(mo); });

    StokesOpts so;
    auto* cstokes = app.add_subcommand("stokes-check", "boundary vs volume stress identity");
    cstokes->add_option("--field", so.field, "quad, rot, gauss");
    cstokes->add_option("--profile", so.profile, "profile id");
    cstokes->add_option("--n", so.n, "grid nodes per axis on [-1,1]^2");
    cstokes->add_option("--box", so.box, "integration box a:b (both axes)");
    cstokes->add_option("--tol", so.tol, "pass threshold for rel_err");
    cstokes->add_option("--out", so.out, "output CSV path");
    cstokes->callback([&] { run_stokes(so); });

    VarcheckOpts vo;
    auto* cvar = app.add_subcommand("varcheck", "first-variation identity on random fields");
    cvar->add_option("--seed", vo.seed, "random seed");
    cvar->add_option("--trials", vo.trials, "number of random pairs");
    cvar->add_option("--n", vo.n, "grid nodes per axis on [-1,1]^2");
    cvar->add_option("--profile", vo.profile, "profile id");
    cvar->add_option("--tol", vo.tol, "pass threshold for rel_err");
    cvar->add_option("--out", vo.out, "output CSV path");
    cvar->callback([&] { run_varcheck(vo); });

    auto* cbi = app.add_subcommand("bi", "extended Born-Infeld graph tools");
    cbi->require_subcommand(1);

    BiSolveOpts bso;
    auto* cbisolve = cbi->add_subcommand("solve", "radial first-integral solve");
    cbisolve->add_option("--sign", bso.sign, "plus or minus");
    cbisolve->add_option("--m", bso.m, "graph dimension");
    cbisolve->add_option("--C", bso.C, "first-integral constant");
    cbisolve->add_option("--r", bso.range, "radial range a:b");
    cbisolve->add_option("--n", bso.n, "radial nodes");
    cbisolve->add_option("--out", bso.out, "output CSV path");
    cbisolve->add_option("--graph-out", bso.graph_out, "also sample u(|x|) to this grid CSV");
    cbisolve->add_option("--graph-box", bso.graph_box, "grid box a:b,c:d for --graph-out");
    cbisolve->add_option("--graph-n", bso.graph_n, "grid nodes per axis for --graph-out");
    cbisolve->callback([&] { run_bi_solve(bso); });

    BiDualizeOpts bdo;
    auto* cbidual = cbi->add_subcommand("dualize", "scalar duality transform on a 2D grid");
    cbidual->add_option("--in", bdo.in, "input grid CSV (0-form)")->required();
    cbidual->add_option("--sign", bdo.sign, "+1 or -1 branch");
    cbidual->add_option("--sigma-out", bdo.sigma_out, "write the dual field CSV here");
    cbidual->add_option("--out", bdo.out, "residual summary CSV path");
    cbidual->callback([&] { run_bi_dualize(bdo); });

    BiBoundOpts bbo;
    auto* cbibound = cbi->add_subcommand("bound", "graph energy bound check");
    cbibound->add_option("--in", bbo.in, "input grid CSV (0-form solution)");
    cbibound->add_option("--rho", bbo.rho, "ball radius");
    cbibound->add_option("--el-tol", bbo.el_tol, "solution residual gate");
    cbibound->add_flag("--radial", bbo.radial, "use the radial closed-form solution");
    cbibound->add_option("--sign", bbo.sign, "radial: plus or minus");
    cbibound->add_option("--m", bbo.m, "radial: dimension");
    cbibound->add_option("--C", bbo.C, "radial: first-integral constant");
    cbibound->add_option("--out", bbo.out, "output CSV path");
    cbibound->callback([&] { run_bi_bound(bbo); });

    auto* cchern = app.add_subcommand("chern", "flux estimates and volume doubling");
    cchern->require_subcommand(1);
    ChernOpts co;
    auto add_chern_common = [&](CLI::App* c, bool with_radii) {
        c->add_option("--in", co.in, "input grid CSV");
        c->add_option("--preset", co.preset, "catenoid, dome:<R>, zero");
        c->add_option("--preset-h", co.preset_h, "grid spacing for presets");
        c->add_option("--plane", co.plane, "two plane axes, e.g. 0,1");
        c->add_option("--x0", co.x0, "center, e.g. 3,0");
        if (with_radii) c->add_option("--radii", co.radii, "comma list of radii")->required();
        c->add_option("--out", co.out, "output CSV path");
    };
    auto* cflux = cchern->add_subcommand("flux", "normalized boundary flux vs bound");
    add_chern_common(cflux, true);
    cflux->callback([&] { run_chern_flux(co); });
    auto* cpunct = cchern->add_subcommand("punctured", "annulus flux off a bounded set");
    add_chern_common(cpunct, true);
    cpunct->add_option("--r0", co.r0, "inner radius");
    cpunct->add_option("--C1", co.C1, "cutoff constant in the bound");
    cpunct->callback([&] { run_chern_punctured(co); });
    auto* cspace = cchern->add_subcommand("spacelike", "gamma-weighted flux for spacelike graphs");
    add_chern_common(cspace, true);
    cspace->callback([&] { run_chern_spacelike(co); });
    auto* cdoub = cchern->add_subcommand("doubling", "volume doubling ratios");
    cdoub->add_option("--man", co.man, "euclidean or hyperbolic:<beta>");
    cdoub->add_option("--m", co.m, "dimension");
    cdoub->add_option("--radii", co.radii, "comma list of radii")->required();
    cdoub->add_option("--out", co.out, "output CSV path");
    cdoub->callback([&] { run_chern_doubling(co); });

    GrowthOpts go;
    auto* cgrowth = app.add_subcommand("growth", "gauge divergence and growth classification");
    cgrowth->add_option("--psi", go.psi, "one or logq:<q>");
    cgrowth->add_option("--energy", go.energy, "log or pow:<a>");
    cgrowth->add_option("--lambda", go.lambda, "monotonicity exponent");
    cgrowth->add_option("--rho-min", go.rho_min, "smallest sample radius");
    cgrowth->add_option("--rho-max", go.rho_max, "largest sample radius");
    cgrowth->add_option("--n", go.n, "number of samples");
    cgrowth->add_option("--out", go.out, "output CSV path");
    cgrowth->callback([&] { run_growth(go); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_status;
}
