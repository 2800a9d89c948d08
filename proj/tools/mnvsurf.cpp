// Command-line driver: builds Weierstrass data (Clifford torus, surfaces of
// revolution, potential snapshots), evolves it under the modified
// Novikov-Veselov flow, analyzes and exports results, and runs the built-in
// verification suites.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "mnv/io.hpp"
#include "mnv/operators.hpp"
#include "mnv/surfaces.hpp"

using namespace mnv;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Check {
    std::string name;
    double value;
    double threshold;
    bool invert = false;  // pass when value >= threshold (negative controls)
};

int report_checks(const std::vector<Check>& checks) {
    int failures = 0;
    for (const auto& c : checks) {
        const bool ok = c.invert ? c.value >= c.threshold : c.value <= c.threshold;
        if (!ok) ++failures;
        std::cout << (ok ? "PASS  " : "FAIL  ") << std::left << std::setw(42)
                  << c.name << std::scientific << std::setprecision(3)
                  << c.value << (c.invert ? " >= " : " <= ") << c.threshold
                  << "\n"
                  << std::defaultfloat;
    }
    return failures;
}

Profile read_profile(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open profile file " + path.string());
    Profile p{{}, 2.0 * pi};
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "period" || head == "period:") {
            ls >> p.period;
            continue;
        }
        p.values.push_back(std::stod(head));
        double v;
        while (ls >> v) p.values.push_back(v);
    }
    if (p.values.size() < 4) throw Error("profile needs at least 4 samples");
    return p;
}

GridField lift_profile(const PeriodicLattice& lat, const Profile& p) {
    GridField f = GridField::zeros(lat);
    for (int j1 = 0; j1 < lat.n1(); ++j1)
        for (int j2 = 0; j2 < lat.n2(); ++j2) f.at(j1, j2) = p.values[j1];
    return f;
}

Profile random_profile(int n, double period, int K, std::mt19937_64& rng,
                       double amp = 1.0) {
    std::normal_distribution<double> g;
    Profile p{std::vector<double>(n, 0.0), period};
    for (int k = 1; k <= K; ++k) {
        const double a = amp * g(rng) * std::exp(-0.2 * k * k);
        const double b = amp * g(rng) * std::exp(-0.2 * k * k);
        for (int j = 0; j < n; ++j)
            p.values[j] += a * std::cos(2 * pi * k * j / n) +
                           b * std::sin(2 * pi * k * j / n);
    }
    return p;
}

GridField random_field(const PeriodicLattice& lat, int K, std::mt19937_64& rng,
                       SpinCharacter ch = {}, bool real_valued = false) {
    std::normal_distribution<double> g;
    std::vector<cplx> m(lat.size(), cplx(0.0));
    const int n1 = lat.n1(), n2 = lat.n2();
    for (int a = -K; a <= K; ++a)
        for (int b = -K; b <= K; ++b)
            m[static_cast<std::size_t>((a + n1) % n1) * n2 + (b + n2) % n2] =
                cplx(g(rng), g(rng)) * std::exp(-0.25 * (a * a + b * b));
    GridField f = from_modes(lat, ch, std::move(m));
    return real_valued ? real_part(f) : f;
}

void print_report(std::ostream& os, const WillmoreReport& r) {
    os << std::setprecision(12) << r << "\n";
}

// ---------------------------------------------------------------------------
// make

WeierstrassData data_from_potential(const fs::path& path, int n2) {
    if (fs::is_directory(path)) return read_state(path).data;
    GridField U = read_field(path);
    if (linf(U) < 1e-14) {
        const auto& lat = U.lattice();
        return WeierstrassData{U, SpinorPair{GridField::zeros(lat),
                                             GridField::constant(lat, 1.0)}};
    }
    // y-independent potentials go through the revolution solver
    double ydep = 0.0;
    for (int j1 = 0; j1 < U.n1(); ++j1)
        for (int j2 = 0; j2 < U.n2(); ++j2)
            ydep = std::max(ydep, std::abs(U.at(j1, j2) - U.at(j1, 0)));
    if (ydep > 1e-12 * std::max(1.0, linf(U)))
        throw Error("potential depends on both coordinates; supply a full "
                    "state snapshot (spinors cannot be derived from U alone)");
    Profile prof{{}, U.lattice().gen1().real()};
    prof.values.resize(U.n1());
    for (int j = 0; j < U.n1(); ++j) prof.values[j] = U.at(j, 0).real();
    return revolution_data(prof, n2 > 0 ? n2 : U.n2());
}

int cmd_make(const std::string& source, int n1, int n2, const fs::path& profile,
             const fs::path& snapshot, const fs::path& out) {
    WeierstrassData data = [&] {
        if (source == "clifford") return clifford_torus(n1, n2).data;
        if (source == "revolution") return revolution_data(read_profile(profile), n2);
        if (source == "potential") return data_from_potential(snapshot, n2);
        throw Error("unknown source '" + source + "'");
    }();
    fs::create_directories(out);
    FlowState state = make_flow_state(std::move(data));
    write_state(out / "state", state);
    Immersion X = synthesize_immersion(state.data.psis, 1e300);
    write_mesh_obj(out / "initial.obj", X);
    WillmoreReport r = analyze_state(state);
    std::ofstream rf(out / "report.txt");
    print_report(rf, r);
    print_report(std::cout, r);
    return 0;
}

// ---------------------------------------------------------------------------
// evolve

int cmd_evolve(const fs::path& state_dir, const fs::path& out, double dt,
               int steps, const std::string& scheme_name, int cadence,
               const std::string& gauge_mode, double gauge) {
    FlowState state = read_state(state_dir);
    const Scheme scheme = scheme_name == "rk4" ? Scheme::Classical
                                               : Scheme::IntegratingFactor;
    FlowOptions opt;
    opt.gauge = gauge;
    opt.gauge_mode = gauge_mode == "usq" ? GaugeMode::MeanUSquared
                                         : GaugeMode::ZeroMean;
    if (dt <= 0.0) {
        // default c (dx)^3 with c = 1/2 and dx the finest grid spacing
        const auto& lat = state.data.U.lattice();
        const double dx = std::min(std::abs(lat.gen1()) / lat.n1(),
                                   std::abs(lat.gen2()) / lat.n2());
        dt = 0.5 * dx * dx * dx;
    }

    fs::create_directories(out);
    RunManifest m;
    m.gen1 = state.data.U.lattice().gen1();
    m.gen2 = state.data.U.lattice().gen2();
    m.n1 = state.data.U.n1();
    m.n2 = state.data.U.n2();
    m.scheme = scheme_name;
    m.dt = dt;
    m.steps = steps;
    m.cadence = cadence;
    m.gauge_mode = gauge_mode;
    m.gauge = gauge;
    m.source = state_dir.string();
    write_manifest(out / "run.cfg", m);

    InvariantLog log(out / "invariants.csv");
    const double W0 = willmore_from_potential(state.data.U);
    auto snap_name = [](int i) {
        std::ostringstream ss;
        ss << "snap_" << std::setw(6) << std::setfill('0') << i;
        return ss.str();
    };

    log.append(analyze_state(state));
    write_state(out / snap_name(0), state);
    int written = 1;
    bool breach = false;
    try {
        for (int i = 1; i <= steps; ++i) {
            state = step(state, dt, scheme, opt);
            if (i % cadence == 0 || i == steps) {
                WillmoreReport r = analyze_state(state);
                log.append(r);
                write_state(out / snap_name(written++), state);
                if (W0 > 0.0 && std::abs(r.willmore - W0) / W0 > 1e-6)
                    breach = true;
            }
        }
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up guard: " << e.what() << "\n";
        return 2;
    }
    Immersion X = synthesize_immersion(state.data.psis, 1e300);
    write_mesh_obj(out / "final.obj", X);
    print_report(std::cout, analyze_state(state));
    if (breach) {
        std::cerr << "invariant breach: Willmore drift above 1e-6\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const fs::path& path, const fs::path& out) {
    std::vector<FlowState> snaps;
    if (fs::exists(path / "U.gwf")) {
        snaps.push_back(read_state(path));
    } else {
        std::vector<fs::path> dirs;
        for (const auto& e : fs::directory_iterator(path))
            if (e.is_directory() && e.path().filename().string().rfind("snap_", 0) == 0)
                dirs.push_back(e.path());
        std::sort(dirs.begin(), dirs.end());
        for (const auto& d : dirs) snaps.push_back(read_state(d));
        if (snaps.empty()) throw Error("no state or snapshots under " + path.string());
    }
    FlowReportSummary sum = flow_report(snaps);
    for (const auto& r : sum.rows) print_report(std::cout, r);
    std::cout << "willmore drift: " << sum.willmore_drift
              << "  max constraint: " << sum.max_constraint_residual
              << "  max defect: " << sum.max_period_defect
              << "  conformal class fixed: "
              << (sum.conformal_class_fixed ? "yes" : "no") << "\n";
    if (!out.empty()) {
        fs::create_directories(out);
        InvariantLog log(out / "report.csv");
        for (const auto& r : sum.rows) log.append(r);
        std::ofstream os(out / "summary.txt");
        os << std::setprecision(12) << "willmore_drift: " << sum.willmore_drift
           << "\nmax_constraint_residual: " << sum.max_constraint_residual
           << "\nmax_period_defect: " << sum.max_period_defect
           << "\nmax_imag_u: " << sum.max_imag_u << "\nconformal_class_fixed: "
           << (sum.conformal_class_fixed ? "yes" : "no")
           << "\nbound_violated: " << (sum.bound_violated ? "yes" : "no")
           << "\n";
    }
    if (sum.bound_violated) {
        std::cerr << "LOUD WARNING: Willmore value below 2 pi^2 on a closed "
                     "torus; the run is suspect\n";
        return 4;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// export

int cmd_export(const fs::path& state_dir, const std::string& format,
               const std::string& quantity, const fs::path& out) {
    FlowState state = read_state(state_dir);
    if (format == "mesh") {
        Immersion X = synthesize_immersion(state.data.psis, 1e300);
        write_mesh_obj(out, X);
        return 0;
    }
    if (format == "csv") {
        GridField f = [&]() -> GridField {
            if (quantity == "U") return state.data.U;
            if (quantity == "V") return real_part(state.V);
            if (quantity == "D") return induced_metric_density(state.data.psis);
            if (quantity == "H")
                return mean_curvature(state.data.U, state.data.psis);
            if (quantity == "K") return gaussian_curvature(state.data.psis);
            throw Error("unknown quantity '" + quantity + "'");
        }();
        write_scalar_csv(out, quantity, f);
        return 0;
    }
    throw Error("unknown export format '" + format + "'");
}

// ---------------------------------------------------------------------------
// verify suites

void suite_spectral(std::vector<Check>& cs, std::mt19937_64& rng) {
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), 64, 64);
    GridField f = random_field(lat, 8, rng);
    GridField g = random_field(lat, 8, rng);
    GridField h = f - GridField::constant(lat, mean(f));
    cs.push_back({"spectral.dbar_roundtrip",
                  linf(d_zbar(dbar_inverse(h)) - h) / std::max(linf(h), 1e-300),
                  1e-11});
    cs.push_back({"spectral.commute",
                  linf(d_z(d_zbar(f)) - d_zbar(d_z(f))) / linf(f), 1e-11});
    cs.push_back({"spectral.laplacian_factorization",
                  linf(0.25 * (d_x(d_x(f)) + d_y(d_y(f))) - d_z(d_zbar(f))) /
                      std::max(linf(laplacian(f)), 1e-300),
                  1e-11});
    cs.push_back({"spectral.conjugation",
                  linf(conjugate(d_z(f)) - d_zbar(conjugate(f))) / linf(d_z(f)),
                  1e-13});
    GridField p3 = dealiased_product(f, g, f);
    GridField p3r = dealiased_product({&f, &f, &g});
    cs.push_back({"spectral.product_symmetry", linf(p3 - p3r) / linf(p3), 1e-12});
    // Gauss-Bonnet on the Clifford torus and on a random positive density
    auto ct = clifford_torus(64, 64);
    GridField K = gaussian_curvature(ct.data.psis);
    GridField D = induced_metric_density(ct.data.psis);
    cs.push_back(
        {"spectral.gauss_bonnet_clifford",
         std::abs(integrate(pointwise_product(K, pointwise_product(D, D))).value),
         1e-8});
}

void suite_triples(std::vector<Check>& cs, std::mt19937_64& rng) {
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), 64, 64);
    for (int rep = 0; rep < 5; ++rep) {
        GridField U = random_field(lat, 6, rng);
        SpinorPair phi{random_field(lat, 6, rng), random_field(lat, 6, rng)};
        cs.push_back({"triples.plus.rand" + std::to_string(rep),
                      triple_residual(U, FlowSign::Plus, phi), 1e-8});
        cs.push_back({"triples.minus.rand" + std::to_string(rep),
                      triple_residual(U, FlowSign::Minus, phi), 1e-8});
    }
    GridField U = random_field(lat, 6, rng);
    SpinorPair phi{random_field(lat, 6, rng), random_field(lat, 6, rng)};
    cs.push_back({"triples.corrupted_negative_control",
                  triple_residual(U, FlowSign::Plus, phi, true), 1e-2, true});
}

void suite_reductions(std::vector<Check>& cs, std::mt19937_64& rng) {
    auto lat = make_lattice(cplx(2 * pi, 0), cplx(0, 2 * pi), 48, 48);
    Profile up = random_profile(48, 2 * pi, 6, rng);
    GridField U = lift_profile(lat, up);
    GridField V = solve_V(U, mean(dealiased_product(U, U)));
    Profile mk = mkdv_rhs(up);
    GridField expect = 0.25 * lift_profile(lat, mk);
    cs.push_back({"reductions.mnv_to_mkdv",
                  linf(mnv_rhs(U, V) - expect) / std::max(1.0, linf(expect)),
                  1e-10});

    GridField rhs_nv = nv_rhs(U, 3.0 * mean(U));
    Profile uxxx = profile_derivative(up, 3);
    Profile ux = profile_derivative(up);
    Profile kdv_form{std::vector<double>(48), 2 * pi};
    for (int j = 0; j < 48; ++j)
        kdv_form.values[j] =
            0.25 * uxxx.values[j] + 6.0 * up.values[j] * ux.values[j];
    cs.push_back({"reductions.nv_to_kdv_form",
                  linf(rhs_nv - lift_profile(lat, kdv_form)) /
                      std::max(1.0, linf(rhs_nv)),
                  1e-10});

    Profile cp{std::vector<double>(256), 2 * pi};
    for (int j = 0; j < 256; ++j)
        cp.values[j] = clifford_potential(2 * pi * j / 256);
    Profile m = mkdv_rhs(cp);
    Profile cpx = profile_derivative(cp);
    double err = 0.0;
    for (int j = 0; j < 256; ++j)
        err = std::max(err, std::abs(m.values[j] - 2.0 * cpx.values[j]));
    cs.push_back({"reductions.clifford_mkdv_translation", err, 1e-9});
}

void suite_clifford(std::vector<Check>& cs) {
    auto ct = clifford_torus(128, 128);
    GridField Ux = d_x(ct.data.U);
    double alg = 0.0;
    for (std::size_t i = 0; i < ct.data.U.size(); ++i) {
        const double u = ct.data.U.values()[i].real();
        const double ux = Ux.values()[i].real();
        alg = std::max(alg, std::abs(ux * ux + 4 * u * u * u * u - 2 * u * u -
                                     u / std::sqrt(2.0) - 1.0 / 16.0));
    }
    cs.push_back({"clifford.potential_relation", alg, 1e-10});
    cs.push_back({"clifford.willmore",
                  std::abs(willmore_from_potential(ct.data.U) - 2 * pi * pi) /
                      (2 * pi * pi),
                  1e-7});
    GridField D = induced_metric_density(ct.data.psis);
    cs.push_back({"clifford.el_residual", linf(el_residual(ct.data.U, D)), 1e-6});
    GridField V = solve_V(ct.data.U, mean(dealiased_product(ct.data.U, ct.data.U)));
    cs.push_back({"clifford.stationarity",
                  linf(mnv_rhs(ct.data.U, V) - 0.5 * d_x(ct.data.U)), 1e-9});
    Immersion X = synthesize_immersion(ct.data.psis);
    cs.push_back({"clifford.synthesis_vs_closed_form",
                  std::max({linf(X.x1 - ct.immersion.x1),
                            linf(X.x2 - ct.immersion.x2),
                            linf(X.x3 - ct.immersion.x3)}),
                  1e-6});
}

void suite_roundtrips(std::vector<Check>& cs) {
    auto ct = clifford_torus(64, 64);
    Immersion X = synthesize_immersion(ct.data.psis);
    SpinorExtraction ex = extract_spinors(X);
    const double direct = std::max(linf(ex.psis.psi1 - ct.data.psis.psi1),
                                   linf(ex.psis.psi2 - ct.data.psis.psi2));
    const double flipped = std::max(linf(ex.psis.psi1 + ct.data.psis.psi1),
                                    linf(ex.psis.psi2 + ct.data.psis.psi2));
    cs.push_back({"roundtrips.extract_after_synthesize",
                  std::min(direct, flipped), 1e-6});
    cs.push_back({"roundtrips.potential_recovery", linf(ex.U - ct.data.U), 1e-6});
    Immersion X2 = synthesize_immersion(ex.psis);
    cs.push_back({"roundtrips.synthesize_after_extract",
                  std::max({linf(X2.x1 - X.x1), linf(X2.x2 - X.x2),
                            linf(X2.x3 - X.x3)}),
                  1e-6});
    auto G = gauss_map(ct.data.psis);
    GridField iso = pointwise_product(G[0], G[0]) +
                    pointwise_product(G[1], G[1]) +
                    pointwise_product(G[2], G[2]);
    cs.push_back({"roundtrips.gauss_map_isotropy", linf(iso), 1e-11});
}

void suite_exactness(std::vector<Check>& cs) {
    auto ct = clifford_torus(128, 128);
    const GridField& U = ct.data.U;
    const GridField& p1 = ct.data.psis.psi1;
    const GridField& p2 = ct.data.psis.psi2;
    GridField V = solve_V(U);
    GridField Vb = conjugate(V);
    SpinorPair pt = psi_rhs(U, V, ct.data.psis);
    auto P = [](const GridField& a, const GridField& b) {
        return pointwise_product(a, b);
    };
    GridField F0 = 1.5 * P(V, P(p2, p2)) + P(p2, d_z(p2, 2)) -
                   0.5 * P(d_z(p2), d_z(p2)) - 1.5 * P(Vb, P(p1, p1)) -
                   P(p1, d_zbar(p1, 2)) + 0.5 * P(d_zbar(p1), d_zbar(p1));
    const double s0 = std::max(linf(P(p2, pt.psi2)), 1.0);
    cs.push_back({"exactness.omega0_dz",
                  linf(d_z(F0) - P(p2, pt.psi2)) / s0, 1e-8});
    cs.push_back({"exactness.omega0_dzbar",
                  linf(d_zbar(F0) + P(p1, pt.psi1)) / s0, 1e-8});
    GridField q1 = conjugate(p1), q2 = conjugate(p2);
    GridField q1t = conjugate(pt.psi1), q2t = conjugate(pt.psi2);
    GridField F1 = P(q1, d_z(p2, 2)) + P(p2, d_z(q1, 2)) - P(d_z(p2), d_z(q1)) +
                   3.0 * P(V, P(q1, p2)) + P(p1, d_zbar(q2, 2)) +
                   P(q2, d_zbar(p1, 2)) - P(d_zbar(q2), d_zbar(p1)) +
                   3.0 * P(Vb, P(p1, q2));
    const double s1 = std::max(linf(P(pt.psi2, q1) + P(p2, q1t)), 1.0);
    cs.push_back({"exactness.omega1_dz",
                  linf(d_z(F1) - P(pt.psi2, q1) - P(p2, q1t)) / s1, 1e-8});
    cs.push_back({"exactness.omega1_dzbar",
                  linf(d_zbar(F1) - P(pt.psi1, q2) - P(p1, q2t)) / s1, 1e-8});
    FlowState s = make_flow_state(WeierstrassData{U, ct.data.psis});
    cs.push_back({"exactness.willmore_drift_instant",
                  willmore_density_drift(s), 1e-10});
}

void suite_conservation(std::vector<Check>& cs) {
    auto ct = clifford_torus(64, 64);
    FlowState s = make_flow_state(std::move(ct.data));
    const double W0 = willmore_from_potential(s.data.U);
    const ConformalClass cc0 = conformal_class(s.data.U.lattice());
    double maxdrift = 0.0, maxconstraint = 0.0, maxdefect = 0.0, maximag = 0.0,
           maxdirac = 0.0;
    bool class_fixed = true;
    for (int i = 1; i <= 1000; ++i) {
        s = step(s, 1e-4, Scheme::IntegratingFactor);
        if (i % 100 == 0 || i == 1000) {
            maxdrift = std::max(
                maxdrift, std::abs(willmore_from_potential(s.data.U) - W0) / W0);
            maxconstraint =
                std::max(maxconstraint, constraint_residual(s.data.U, s.V));
            maxdefect = std::max(
                maxdefect,
                synthesize_immersion(s.data.psis, 1e300).defect_norm());
            maximag = std::max(maximag, linf_imag(s.data.U));
            auto [r1, r2] = dirac_residual(s.data.U, s.data.psis);
            maxdirac = std::max({maxdirac, linf(r1), linf(r2)});
            if (!(conformal_class(s.data.U.lattice()) == cc0)) class_fixed = false;
        }
    }
    cs.push_back({"conservation.willmore_drift", maxdrift, 1e-6});
    cs.push_back({"conservation.constraint_residual", maxconstraint, 1e-9});
    cs.push_back({"conservation.period_defect", maxdefect, 1e-7});
    cs.push_back({"conservation.imag_u", maximag, 1e-9});
    cs.push_back({"conservation.dirac_residual_growth", maxdirac, 1e-6});
    cs.push_back({"conservation.conformal_class_fixed",
                  class_fixed ? 0.0 : 1.0, 0.5});
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::cout << "seed: " << seed << "\n";
    std::vector<Check> cs;
    const bool all = suite == "all";
    if (all || suite == "spectral") suite_spectral(cs, rng);
    if (all || suite == "triples") suite_triples(cs, rng);
    if (all || suite == "reductions") suite_reductions(cs, rng);
    if (all || suite == "clifford") suite_clifford(cs);
    if (all || suite == "roundtrips") suite_roundtrips(cs);
    if (all || suite == "exactness") suite_exactness(cs);
    if (all || suite == "conservation") suite_conservation(cs);
    if (cs.empty()) throw Error("unknown suite '" + suite + "'");
    const int failures = report_checks(cs);
    std::cout << (failures == 0 ? "all checks passed"
                                : std::to_string(failures) + " check(s) FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"doubly-periodic Weierstrass-data simulator for the modified "
                 "Novikov-Veselov flow"};
    app.require_subcommand(1);

    // make
    auto* mk = app.add_subcommand("make", "generate initial data");
    std::string mk_source = "clifford";
    int mk_n1 = 64, mk_n2 = 0;
    std::string mk_profile, mk_snapshot, mk_out = "out";
    mk->add_option("--source", mk_source, "clifford | revolution | potential");
    mk->add_option("--resolution", mk_n1, "grid points per axis");
    mk->add_option("--n2", mk_n2, "grid points along the second axis");
    mk->add_option("--profile", mk_profile, "profile file for revolution");
    mk->add_option("--snapshot", mk_snapshot, "U field or state for potential");
    mk->add_option("--out", mk_out, "output directory");

    // evolve
    auto* ev = app.add_subcommand("evolve", "advance a state under the flow");
    std::string ev_state, ev_out = "run";
    double ev_dt = 0.0, ev_gauge = 0.0;
    int ev_steps = 1000, ev_cadence = 100;
    std::string ev_scheme = "if", ev_gauge_mode = "zero";
    ev->add_option("--state", ev_state, "state snapshot directory")->required();
    ev->add_option("--out", ev_out, "run output directory");
    ev->add_option("--dt", ev_dt, "time step (default 0.5 dx^3)");
    ev->add_option("--steps", ev_steps, "number of steps");
    ev->add_option("--scheme", ev_scheme, "if | rk4");
    ev->add_option("--cadence", ev_cadence, "snapshot cadence");
    ev->add_option("--gauge-mode", ev_gauge_mode, "zero | usq");
    ev->add_option("--gauge", ev_gauge, "constant added to V");

    // analyze
    auto* an = app.add_subcommand("analyze", "report invariants of a state or run");
    std::string an_path, an_out;
    an->add_option("--state", an_path, "state or run directory")->required();
    an->add_option("--out", an_out, "report output directory");

    // verify
    auto* vf = app.add_subcommand("verify", "run a built-in property suite");
    std::string vf_suite = "all";
    std::uint64_t vf_seed = 0x5eed2026;
    vf->add_option("--suite", vf_suite,
                   "all | spectral | triples | reductions | clifford | "
                   "roundtrips | exactness | conservation");
    vf->add_option("--seed", vf_seed, "random seed (printed in the report)");

    // export
    auto* ex = app.add_subcommand("export", "export mesh or per-node scalars");
    std::string ex_state, ex_format = "mesh", ex_quantity = "U", ex_out = "out.obj";
    ex->add_option("--state", ex_state, "state snapshot directory")->required();
    ex->add_option("--format", ex_format, "mesh | csv");
    ex->add_option("--quantity", ex_quantity, "U | V | D | H | K (csv)");
    ex->add_option("--out", ex_out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*mk)
            return cmd_make(mk_source, mk_n1, mk_n2 > 0 ? mk_n2 : mk_n1,
                            mk_profile, mk_snapshot, mk_out);
        if (*ev)
            return cmd_evolve(ev_state, ev_out, ev_dt, ev_steps, ev_scheme,
                              ev_cadence, ev_gauge_mode, ev_gauge);
        if (*an) return cmd_analyze(an_path, an_out);
        if (*vf) return cmd_verify(vf_suite, vf_seed);
        if (*ex) return cmd_export(ex_state, ex_format, ex_quantity, ex_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
