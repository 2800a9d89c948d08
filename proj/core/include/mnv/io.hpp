#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mnv/flows.hpp"
#include "mnv/weierstrass.hpp"
#include "mnv/willmore.hpp"

namespace mnv {

// Field snapshot file ("GWF1"): magic, lattice generators as 4 little-endian
// f64, n1 n2 as u32, the two character offsets as bytes (0 or 1 meaning 0 or
// 1/2), then n1*n2 samples row-major as re/im f64 pairs.
void write_field(const std::filesystem::path& path, const GridField& f);
GridField read_field(const std::filesystem::path& path);

// A state snapshot is a directory holding U.gwf, psi1.gwf, psi2.gwf, V.gwf
// and meta.txt (the flow time). V is re-solved when absent.
void write_state(const std::filesystem::path& dir, const FlowState& state);
FlowState read_state(const std::filesystem::path& dir);

// wavefront-style mesh: n1*n2 vertices, n1*n2 quad faces with periodic wrap
void write_mesh_obj(const std::filesystem::path& path, const Immersion& X);

// per-node scalar CSV with a header naming the quantity and the lattice
void write_scalar_csv(const std::filesystem::path& path,
                      const std::string& quantity, const GridField& f);

struct RunManifest {
    cplx gen1, gen2;
    int n1 = 0, n2 = 0;
    std::string scheme = "if";
    double dt = 0.0;
    int steps = 0;
    int cadence = 1;
    std::string gauge_mode = "zero";
    double gauge = 0.0;
    std::string source;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

// appends rows "t,willmore,mean_U,constraint_residual,dirac_residual,
// period_defect_norm,imag_U_norm"; writes the header when creating the file
class InvariantLog {
  public:
    explicit InvariantLog(std::filesystem::path path);
    void append(const WillmoreReport& r);
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

}  // namespace mnv
