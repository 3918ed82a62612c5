#include "nspfc/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "nspfc/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

namespace nspfc {

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uintmax_t expected_size(int dim, std::size_t n_total) {
    return 16 + 4 + 4 + 8 + 8 +
           static_cast<std::uintmax_t>(1 + dim) * n_total * sizeof(double);
}

} // namespace

void write_snapshot(const State& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open snapshot for writing: " + path.string());
    const Grid& g = state.phi.grid();
    out.write(snapshot_magic, sizeof snapshot_magic);
    put_u32(out, static_cast<std::uint32_t>(g.dim()));
    put_u32(out, static_cast<std::uint32_t>(g.n()));
    put_f64(out, g.box_length());
    put_f64(out, state.t);
    out.write(reinterpret_cast<const char*>(state.phi.real().data()),
              static_cast<std::streamsize>(g.size() * sizeof(double)));
    for (int a = 0; a < g.dim(); ++a)
        out.write(reinterpret_cast<const char*>(state.u[a].real().data()),
                  static_cast<std::streamsize>(g.size() * sizeof(double)));
    if (!out)
        throw IoError("short write on snapshot: " + path.string());
}

SnapshotHeader peek_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open snapshot: " + path.string());
    char magic[16];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, snapshot_magic, sizeof magic) != 0)
        throw IoError("bad snapshot magic in " + path.string());
    SnapshotHeader h;
    std::uint32_t dim = 0, n = 0;
    in.read(reinterpret_cast<char*>(&dim), sizeof dim);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&h.box_length), sizeof h.box_length);
    in.read(reinterpret_cast<char*>(&h.t), sizeof h.t);
    if (!in)
        throw IoError("truncated snapshot header in " + path.string());
    h.dim = static_cast<int>(dim);
    h.n = static_cast<int>(n);
    return h;
}

State read_snapshot(const std::filesystem::path& path, const GridPtr& grid) {
    const SnapshotHeader h = peek_snapshot(path);
    const Grid& g = *grid;
    if (h.dim != g.dim() || h.n != g.n() || h.box_length != g.box_length())
        throw ConfigError("snapshot grid mismatch: file has dim=" + std::to_string(h.dim) +
                          " n=" + std::to_string(h.n) + " L=" + std::to_string(h.box_length) +
                          ", config expects dim=" + std::to_string(g.dim()) +
                          " n=" + std::to_string(g.n()) + " L=" + std::to_string(g.box_length()));

    const std::uintmax_t want = expected_size(h.dim, g.size());
    const std::uintmax_t got = std::filesystem::file_size(path);
    if (got != want)
        throw IoError("truncated snapshot " + path.string() + ": expected " +
                      std::to_string(want) + " bytes, found " + std::to_string(got));

    std::ifstream in(path, std::ios::binary);
    in.seekg(40);
    State state(grid);
    state.t = h.t;
    in.read(reinterpret_cast<char*>(state.phi.real().data()),
            static_cast<std::streamsize>(g.size() * sizeof(double)));
    for (int a = 0; a < g.dim(); ++a)
        in.read(reinterpret_cast<char*>(state.u[a].real().data()),
                static_cast<std::streamsize>(g.size() * sizeof(double)));
    if (!in)
        throw IoError("short read on snapshot: " + path.string());
    state.phi.forward();
    state.u.forward();
    return state;
}

} // namespace nspfc
