#pragma once

#include <string>
#include <vector>

#include "hydrostat/field.hpp"
#include "hydrostat/homogenize.hpp"

namespace hydrostat {

/// Vertical placement of snapshot layers: nz layer centers, nz+1
/// interfaces, or a forcing record (nz layers of Ts followed by the two
/// components of tau).
enum class Stagger { center, interface, forcing };

/// One field on disk. The first line is a text header
///   HYDROSTAT1 nx=.. ny=.. nz=.. Lx=.. Ly=.. h=.. stagger=.. t=.. field=.. byteorder=LE
/// followed by little-endian 64-bit floats, x fastest, then y, then layer.
struct Snapshot {
    GridSpec grid;
    Stagger stagger = Stagger::center;
    double t = 0.0;
    std::string field;
    std::vector<double> data;

    int layers() const;
    std::size_t expected_size() const { return grid.columns() * static_cast<std::size_t>(layers()); }
};

Snapshot make_snapshot(const ScalarField& f, const std::string& name, double t);
Snapshot make_snapshot(const WField& f, const std::string& name, double t);
ScalarField to_scalar(const Snapshot& s);

/// Throws std::runtime_error on I/O failure or a malformed file.
void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path);

struct SnapshotDiff {
    double l2 = 0.0;    ///< sqrt(sum (a-b)^2 dV)
    double linf = 0.0;
};

/// Throws std::invalid_argument when the layouts differ.
SnapshotDiff diff_snapshots(const Snapshot& a, const Snapshot& b);

/// Writes one forcing snapshot per sample plus the index file `index_path`
/// (lines "time path", paths relative to the index).
void write_forcing(const std::string& index_path, const BoundaryForcing& forcing);
BoundaryForcing read_forcing(const std::string& index_path, double alpha_v, double alpha_T);

}  // namespace hydrostat
