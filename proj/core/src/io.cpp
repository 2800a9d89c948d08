#include "mnv/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace mnv {
namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<unsigned char, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), 8);
}

void put_f64(std::ostream& os, double v) {
    put_u64(os, std::bit_cast<std::uint64_t>(v));
}

void put_u32(std::ostream& os, std::uint32_t v) {
    std::array<unsigned char, 4> b;
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint64_t get_u64(std::istream& is) {
    std::array<unsigned char, 8> b;
    is.read(reinterpret_cast<char*>(b.data()), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

std::uint32_t get_u32(std::istream& is) {
    std::array<unsigned char, 4> b;
    is.read(reinterpret_cast<char*>(b.data()), 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const GridField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os.write("GWF1", 4);
    const auto& lat = f.lattice();
    put_f64(os, lat.gen1().real());
    put_f64(os, lat.gen1().imag());
    put_f64(os, lat.gen2().real());
    put_f64(os, lat.gen2().imag());
    put_u32(os, static_cast<std::uint32_t>(lat.n1()));
    put_u32(os, static_cast<std::uint32_t>(lat.n2()));
    const char d1 = static_cast<char>(f.character().half1);
    const char d2 = static_cast<char>(f.character().half2);
    os.write(&d1, 1);
    os.write(&d2, 1);
    for (const auto& v : f.values()) {
        put_f64(os, v.real());
        put_f64(os, v.imag());
    }
    if (!os) throw Error("short write to " + path.string());
}

GridField read_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "GWF1", 4) != 0)
        throw Error(path.string() + " is not a GWF1 field snapshot");
    const double g1r = get_f64(is), g1i = get_f64(is);
    const double g2r = get_f64(is), g2i = get_f64(is);
    const int n1 = static_cast<int>(get_u32(is));
    const int n2 = static_cast<int>(get_u32(is));
    char d1 = 0, d2 = 0;
    is.read(&d1, 1);
    is.read(&d2, 1);
    if (!is) throw Error("truncated header in " + path.string());
    PeriodicLattice lat(cplx(g1r, g1i), cplx(g2r, g2i), n1, n2);
    std::vector<cplx> v(lat.size());
    for (auto& s : v) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        s = cplx(re, im);
    }
    if (!is) throw Error("truncated samples in " + path.string());
    return GridField(lat, SpinCharacter{static_cast<std::uint8_t>(d1),
                                        static_cast<std::uint8_t>(d2)},
                     std::move(v));
}

void write_state(const std::filesystem::path& dir, const FlowState& state) {
    std::filesystem::create_directories(dir);
    write_field(dir / "U.gwf", state.data.U);
    write_field(dir / "psi1.gwf", state.data.psis.psi1);
    write_field(dir / "psi2.gwf", state.data.psis.psi2);
    write_field(dir / "V.gwf", state.V);
    std::ofstream os(dir / "meta.txt");
    os << std::setprecision(17) << "t: " << state.t << "\n";
}

FlowState read_state(const std::filesystem::path& dir) {
    GridField U = read_field(dir / "U.gwf");
    GridField p1 = read_field(dir / "psi1.gwf");
    GridField p2 = read_field(dir / "psi2.gwf");
    double t = 0.0;
    if (std::ifstream meta(dir / "meta.txt"); meta) {
        std::string key;
        meta >> key >> t;
    }
    GridField V = std::filesystem::exists(dir / "V.gwf")
                      ? read_field(dir / "V.gwf")
                      : solve_V(U);
    return FlowState{t, WeierstrassData{std::move(U),
                                        SpinorPair{std::move(p1), std::move(p2)}},
                     std::move(V)};
}

void write_mesh_obj(const std::filesystem::path& path, const Immersion& X) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << std::setprecision(12);
    const int n1 = X.x1.n1(), n2 = X.x1.n2();
    for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2) {
            const auto p = X.position(j1, j2);
            os << "v " << p[0] << " " << p[1] << " " << p[2] << "\n";
        }
    auto vid = [n2](int a, int b) { return a * n2 + b + 1; };
    for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2) {
            const int a = (j1 + 1) % n1, b = (j2 + 1) % n2;
            os << "f " << vid(j1, j2) << " " << vid(a, j2) << " " << vid(a, b)
               << " " << vid(j1, b) << "\n";
        }
}

void write_scalar_csv(const std::filesystem::path& path,
                      const std::string& quantity, const GridField& f) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    const auto& lat = f.lattice();
    os << std::setprecision(17);
    os << "# " << quantity << " on lattice gen1=(" << lat.gen1().real() << ","
       << lat.gen1().imag() << ") gen2=(" << lat.gen2().real() << ","
       << lat.gen2().imag() << ") n1=" << lat.n1() << " n2=" << lat.n2()
       << "\n";
    os << "j1,j2," << quantity << "\n";
    for (int j1 = 0; j1 < f.n1(); ++j1)
        for (int j2 = 0; j2 < f.n2(); ++j2)
            os << j1 << "," << j2 << "," << f.at(j1, j2).real() << "\n";
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << std::setprecision(17);
    os << "gen1: " << m.gen1.real() << " " << m.gen1.imag() << "\n";
    os << "gen2: " << m.gen2.real() << " " << m.gen2.imag() << "\n";
    os << "resolution: " << m.n1 << " " << m.n2 << "\n";
    os << "scheme: " << m.scheme << "\n";
    os << "dt: " << m.dt << "\n";
    os << "steps: " << m.steps << "\n";
    os << "cadence: " << m.cadence << "\n";
    os << "gauge_mode: " << m.gauge_mode << "\n";
    os << "gauge: " << m.gauge << "\n";
    os << "source: " << m.source << "\n";
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path.string());
    RunManifest m;
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(is, line)) {
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        kv[line.substr(0, colon)] = line.substr(colon + 1);
    }
    auto get = [&](const std::string& k) { return std::istringstream(kv[k]); };
    double a = 0, b = 0;
    get("gen1") >> a >> b;
    m.gen1 = cplx(a, b);
    get("gen2") >> a >> b;
    m.gen2 = cplx(a, b);
    get("resolution") >> m.n1 >> m.n2;
    get("scheme") >> m.scheme;
    get("dt") >> m.dt;
    get("steps") >> m.steps;
    get("cadence") >> m.cadence;
    get("gauge_mode") >> m.gauge_mode;
    get("gauge") >> m.gauge;
    get("source") >> m.source;
    return m;
}

InvariantLog::InvariantLog(std::filesystem::path path) : path_(std::move(path)) {
    if (!std::filesystem::exists(path_)) {
        std::ofstream os(path_);
        os << "t,willmore,mean_U,constraint_residual,dirac_residual,"
              "period_defect_norm,imag_U_norm\n";
    }
}

void InvariantLog::append(const WillmoreReport& r) {
    std::ofstream os(path_, std::ios::app);
    os << std::setprecision(17) << r.t << "," << r.willmore << "," << r.mean_u
       << "," << r.constraint_residual << "," << r.dirac_residual << ","
       << r.period_defect << "," << r.imag_u << "\n";
}

}  // namespace mnv
