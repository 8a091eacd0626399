#include "hydrostat/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace hydrostat {

namespace {

constexpr const char* kMagic = "HYDROSTAT1";

const char* stagger_name(Stagger s) {
    switch (s) {
        case Stagger::center: return "center";
        case Stagger::interface: return "interface";
        case Stagger::forcing: return "forcing";
    }
    return "center";
}

Stagger parse_stagger(const std::string& s) {
    if (s == "center") return Stagger::center;
    if (s == "interface") return Stagger::interface;
    if (s == "forcing") return Stagger::forcing;
    throw std::runtime_error("snapshot: unknown stagger '" + s + "'");
}

std::uint64_t to_le(std::uint64_t x) {
    if constexpr (std::endian::native == std::endian::little) return x;
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((x >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
}

}  // namespace

int Snapshot::layers() const {
    switch (stagger) {
        case Stagger::center: return grid.nz;
        case Stagger::interface: return grid.nz + 1;
        case Stagger::forcing: return grid.nz + 2;
    }
    return grid.nz;
}

Snapshot make_snapshot(const ScalarField& f, const std::string& name, double t) {
    Snapshot s;
    s.grid = f.grid();
    s.stagger = Stagger::center;
    s.t = t;
    s.field = name;
    s.data.assign(f.values().begin(), f.values().end());
    return s;
}

Snapshot make_snapshot(const WField& f, const std::string& name, double t) {
    Snapshot s;
    s.grid = f.grid();
    s.stagger = Stagger::interface;
    s.t = t;
    s.field = name;
    s.data.assign(f.values().begin(), f.values().end());
    return s;
}

ScalarField to_scalar(const Snapshot& s) {
    if (s.stagger != Stagger::center) throw std::invalid_argument("snapshot is not cell-centered");
    ScalarField f(s.grid);
    std::copy(s.data.begin(), s.data.end(), f.values().begin());
    return f;
}

void write_snapshot(const std::string& path, const Snapshot& s) {
    if (s.data.size() != s.expected_size()) throw std::invalid_argument("snapshot payload has the wrong length");
    if (s.field.empty() || s.field.find_first_of(" \t\n") != std::string::npos)
        throw std::invalid_argument("snapshot field name must be a non-empty word");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    std::ostringstream hdr;
    hdr << std::setprecision(17) << kMagic << " nx=" << s.grid.nx << " ny=" << s.grid.ny << " nz=" << s.grid.nz
        << " Lx=" << s.grid.Lx << " Ly=" << s.grid.Ly << " h=" << s.grid.h << " stagger=" << stagger_name(s.stagger)
        << " t=" << s.t << " field=" << s.field << " byteorder=LE\n";
    out << hdr.str();
    std::vector<std::uint64_t> raw(s.data.size());
    for (std::size_t n = 0; n < s.data.size(); ++n) raw[n] = to_le(std::bit_cast<std::uint64_t>(s.data[n]));
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 8));
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("snapshot '" + path + "' has no header");
    std::istringstream hs(header);
    std::string magic;
    hs >> magic;
    if (magic != kMagic) throw std::runtime_error("snapshot '" + path + "': bad magic '" + magic + "'");
    std::map<std::string, std::string> kv;
    std::string tok;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::runtime_error("snapshot '" + path + "': malformed header token");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto need = [&](const char* key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error(std::string("snapshot '") + path + "': header lacks " + key);
        return it->second;
    };
    if (need("byteorder") != "LE") throw std::runtime_error("snapshot '" + path + "': unsupported byte order");
    Snapshot s;
    try {
        s.grid.nx = std::stoi(need("nx"));
        s.grid.ny = std::stoi(need("ny"));
        s.grid.nz = std::stoi(need("nz"));
        if (kv.count("Lx")) s.grid.Lx = std::stod(kv["Lx"]);
        if (kv.count("Ly")) s.grid.Ly = std::stod(kv["Ly"]);
        if (kv.count("h")) s.grid.h = std::stod(kv["h"]);
        s.t = std::stod(need("t"));
    } catch (const std::logic_error&) {
        throw std::runtime_error("snapshot '" + path + "': malformed number in header");
    }
    if (s.grid.nx <= 0 || s.grid.ny <= 0 || s.grid.nz <= 0)
        throw std::runtime_error("snapshot '" + path + "': non-positive dimensions");
    s.stagger = kv.count("stagger") ? parse_stagger(kv["stagger"]) : Stagger::center;
    s.field = need("field");

    const std::size_t count = s.expected_size();
    std::vector<std::uint64_t> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 8));
    if (static_cast<std::size_t>(in.gcount()) != count * 8)
        throw std::runtime_error("snapshot '" + path + "': payload shorter than 8*nx*ny*layers bytes");
    if (in.peek() != std::char_traits<char>::eof())
        throw std::runtime_error("snapshot '" + path + "': trailing bytes after payload");
    s.data.resize(count);
    for (std::size_t n = 0; n < count; ++n) s.data[n] = std::bit_cast<double>(to_le(raw[n]));
    return s;
}

SnapshotDiff diff_snapshots(const Snapshot& a, const Snapshot& b) {
    if (a.grid.nx != b.grid.nx || a.grid.ny != b.grid.ny || a.grid.nz != b.grid.nz || a.stagger != b.stagger)
        throw std::invalid_argument("snapshots have different layouts");
    SnapshotDiff d;
    double sum = 0.0;
    for (std::size_t n = 0; n < a.data.size(); ++n) {
        const double e = a.data[n] - b.data[n];
        sum += e * e;
        d.linf = std::max(d.linf, std::abs(e));
    }
    d.l2 = std::sqrt(sum * a.grid.cell_volume());
    return d;
}

void write_forcing(const std::string& index_path, const BoundaryForcing& forcing) {
    namespace fs = std::filesystem;
    const fs::path index(index_path);
    const fs::path dir = index.parent_path();
    const std::string stem = index.stem().string();
    std::ofstream out(index_path);
    if (!out) throw std::runtime_error("cannot open forcing index '" + index_path + "' for writing");
    out << std::setprecision(17);
    const GridSpec& g = forcing.grid();
    const std::size_t cols = g.columns();
    for (std::size_t n = 0; n < forcing.size(); ++n) {
        Snapshot s;
        s.grid = g;
        s.stagger = Stagger::forcing;
        s.t = forcing.times()[n];
        s.field = "forcing";
        s.data.assign(forcing.Ts_sample(n).values().begin(), forcing.Ts_sample(n).values().end());
        const VectorField& tau = forcing.tau_sample(n);
        s.data.insert(s.data.end(), tau.u.values().begin(), tau.u.values().end());
        s.data.insert(s.data.end(), tau.v.values().begin(), tau.v.values().end());
        if (s.data.size() != cols * (g.nz + 2)) throw std::logic_error("forcing record has the wrong size");
        std::ostringstream name;
        name << stem << "_" << std::setw(5) << std::setfill('0') << n << ".snap";
        write_snapshot((dir / name.str()).string(), s);
        out << s.t << " " << name.str() << "\n";
    }
    if (!out) throw std::runtime_error("write to '" + index_path + "' failed");
}

BoundaryForcing read_forcing(const std::string& index_path, double alpha_v, double alpha_T) {
    namespace fs = std::filesystem;
    std::ifstream in(index_path);
    if (!in) throw std::runtime_error("cannot open forcing index '" + index_path + "'");
    const fs::path dir = fs::path(index_path).parent_path();
    std::vector<std::pair<double, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double t;
        std::string path;
        if (!(ls >> t)) continue;
        if (!(ls >> path)) {
            std::ostringstream msg;
            msg << index_path << ":" << lineno << ": expected 'time path'";
            throw std::runtime_error(msg.str());
        }
        entries.emplace_back(t, path);
    }
    if (entries.size() < 3) throw std::runtime_error("forcing index '" + index_path + "' needs at least 3 samples");

    std::optional<BoundaryForcing> forcing;
    for (const auto& [t, rel] : entries) {
        const fs::path p = fs::path(rel).is_absolute() ? fs::path(rel) : dir / rel;
        const Snapshot s = read_snapshot(p.string());
        if (s.stagger != Stagger::forcing) throw std::runtime_error("'" + p.string() + "' is not a forcing record");
        if (std::abs(s.t - t) > 1e-12 * std::max(1.0, std::abs(t)))
            throw std::runtime_error("'" + p.string() + "': time differs from the index entry");
        if (!forcing) forcing.emplace(s.grid, alpha_v, alpha_T);
        const GridSpec& g = forcing->grid();
        if (!s.grid.same_shape(g)) throw std::runtime_error("'" + p.string() + "': grid differs from the first sample");
        const std::size_t cols = g.columns();
        ScalarField Ts(g);
        std::copy(s.data.begin(), s.data.begin() + static_cast<std::ptrdiff_t>(cols * g.nz), Ts.values().begin());
        VectorField tau(g.surface());
        std::copy_n(s.data.begin() + static_cast<std::ptrdiff_t>(cols * g.nz), cols, tau.u.values().begin());
        std::copy_n(s.data.begin() + static_cast<std::ptrdiff_t>(cols * (g.nz + 1)), cols, tau.v.values().begin());
        forcing->add_sample(t, std::move(tau), std::move(Ts));
    }
    return std::move(*forcing);
}

}  // namespace hydrostat
