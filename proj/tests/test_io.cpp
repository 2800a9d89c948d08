#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mnv/io.hpp"
#include "mnv/surfaces.hpp"
#include "test_support.hpp"

using namespace mnv;
using namespace mnvtest;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mnvsurf_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("field snapshots round-trip bit-identically") {
    TempDir tmp;
    auto lat = make_lattice(cplx(2 * pi, 0.5), cplx(-0.3, 2 * pi), 12, 20);
    std::mt19937_64 rng(91);
    for (auto ch : {SpinCharacter{0, 0}, SpinCharacter{1, 1}}) {
        GridField f = random_field(lat, 5, rng, ch);
        const fs::path p = tmp.path / "f.gwf";
        write_field(p, f);
        GridField g = read_field(p);
        CHECK(g.lattice() == f.lattice());
        CHECK(g.character() == f.character());
        REQUIRE(g.values().size() == f.values().size());
        bool identical = true;
        for (std::size_t i = 0; i < g.size(); ++i)
            identical = identical && g.values()[i] == f.values()[i];
        CHECK(identical);
    }
}

TEST_CASE("the field header is the documented byte layout") {
    TempDir tmp;
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), 4, 4);
    GridField f = GridField::zeros(lat, SpinCharacter{1, 0});
    const fs::path p = tmp.path / "h.gwf";
    write_field(p, f);
    std::ifstream is(p, std::ios::binary);
    char magic[4];
    is.read(magic, 4);
    CHECK(std::string(magic, 4) == "GWF1");
    // 4 f64 generators + 2 u32 + 2 bytes + 16 complex samples
    is.seekg(0, std::ios::end);
    CHECK(static_cast<std::size_t>(is.tellg()) ==
          4 + 4 * 8 + 2 * 4 + 2 + 16 * 16);
}

TEST_CASE("reading a non-snapshot file fails cleanly") {
    TempDir tmp;
    const fs::path p = tmp.path / "junk.gwf";
    std::ofstream(p) << "not a field";
    CHECK_THROWS_AS(read_field(p), Error);
}

TEST_CASE("state snapshots round-trip") {
    TempDir tmp;
    auto ct = clifford_torus(16, 16);
    FlowState s = make_flow_state(std::move(ct.data), 0.625);
    write_state(tmp.path / "snap", s);
    FlowState r = read_state(tmp.path / "snap");
    CHECK(r.t == 0.625);
    CHECK(linf(r.data.U - s.data.U) == 0.0);
    CHECK(linf(r.data.psis.psi1 - s.data.psis.psi1) == 0.0);
    CHECK(linf(r.data.psis.psi2 - s.data.psis.psi2) == 0.0);
    CHECK(linf(r.V - s.V) == 0.0);

    // V is recomputed when absent
    fs::remove(tmp.path / "snap" / "V.gwf");
    FlowState r2 = read_state(tmp.path / "snap");
    CHECK(linf(r2.V - s.V) < 1e-12);
}

TEST_CASE("mesh export writes the full quad grid with wraparound") {
    TempDir tmp;
    auto ct = clifford_torus(8, 6);
    const fs::path p = tmp.path / "mesh.obj";
    write_mesh_obj(p, ct.immersion);
    std::ifstream is(p);
    int verts = 0, faces = 0;
    std::string line;
    int wrap_faces = 0;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) ++verts;
        if (line.rfind("f ", 0) == 0) {
            ++faces;
            std::istringstream ls(line.substr(2));
            int a, b, c, d;
            ls >> a >> b >> c >> d;
            CHECK(a >= 1);
            CHECK(a <= 48);
            if (a > b || a > d) ++wrap_faces;
        }
    }
    CHECK(verts == 48);
    CHECK(faces == 48);
    CHECK(wrap_faces > 0);
}

TEST_CASE("scalar CSV export names the quantity and the lattice") {
    TempDir tmp;
    auto lat = make_lattice(cplx(2 * pi, 0), cplx(0, 2 * pi), 4, 4);
    GridField f = GridField::constant(lat, 1.25);
    const fs::path p = tmp.path / "D.csv";
    write_scalar_csv(p, "D", f);
    std::ifstream is(p);
    std::string header, columns, row;
    std::getline(is, header);
    std::getline(is, columns);
    std::getline(is, row);
    CHECK(header.find("D on lattice") != std::string::npos);
    CHECK(header.find("n1=4") != std::string::npos);
    CHECK(columns == "j1,j2,D");
    CHECK(row == "0,0,1.25");
}

TEST_CASE("run manifests round-trip") {
    TempDir tmp;
    RunManifest m;
    m.gen1 = cplx(2 * pi, 0.0);
    m.gen2 = cplx(0.0, 2 * pi);
    m.n1 = 64;
    m.n2 = 64;
    m.scheme = "if";
    m.dt = 1e-4;
    m.steps = 1000;
    m.cadence = 100;
    m.gauge_mode = "zero";
    m.gauge = 0.0;
    m.source = "clifford";
    const fs::path p = tmp.path / "run.cfg";
    write_manifest(p, m);
    RunManifest r = read_manifest(p);
    CHECK(r.gen1 == m.gen1);
    CHECK(r.gen2 == m.gen2);
    CHECK(r.n1 == 64);
    CHECK(r.dt == 1e-4);
    CHECK(r.steps == 1000);
    CHECK(r.cadence == 100);
    CHECK(r.scheme == "if");
    CHECK(r.source == "clifford");
}

TEST_CASE("the invariant log writes the documented columns") {
    TempDir tmp;
    const fs::path p = tmp.path / "invariants.csv";
    InvariantLog log(p);
    WillmoreReport r;
    r.t = 0.5;
    r.willmore = 19.7392;
    log.append(r);
    std::ifstream is(p);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header ==
          "t,willmore,mean_U,constraint_residual,dirac_residual,"
          "period_defect_norm,imag_U_norm");
    CHECK(row.rfind("0.5,19.7392", 0) == 0);
}
