#include "hpe/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "snapshot i/o assumes a little-endian host");

namespace hpe {

namespace {

constexpr char kMagic[4] = {'H', 'P', 'E', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), 4))
        throw std::runtime_error("snapshot: truncated header");
    return v;
}

} // namespace

void save_snapshot(std::ostream& os, const RealField& f) {
    if (f.components < 1) throw std::runtime_error("snapshot: empty field");
    os.write(kMagic, 4);
    put_u32(os, std::uint32_t(f.grid.nx));
    put_u32(os, std::uint32_t(f.grid.ny));
    put_u32(os, std::uint32_t(f.grid.nz));
    put_u32(os, std::uint32_t(f.components));
    os.write(reinterpret_cast<const char*>(f.values.data()),
             std::streamsize(f.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("snapshot: write failed");
}

RealField load_snapshot(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("snapshot: bad magic");
    std::uint32_t nx = get_u32(is), ny = get_u32(is), nz = get_u32(is);
    std::uint32_t ncomp = get_u32(is);
    if (nx < 4 || ny < 4 || nz < 4 || nx % 2 || ny % 2 || nz % 2 || ncomp < 1 ||
        ncomp > 16 || nx > (1u << 20) || ny > (1u << 20) || nz > (1u << 20))
        throw std::runtime_error("snapshot: malformed dimensions");
    RealField f(GridSpec{int(nx), int(ny), int(nz)}, int(ncomp));
    if (!is.read(reinterpret_cast<char*>(f.values.data()),
                 std::streamsize(f.values.size() * sizeof(double))))
        throw std::runtime_error("snapshot: truncated data");
    return f;
}

} // namespace hpe
