#include "qglab/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "qglab/errors.hpp"

namespace qglab {

namespace {

constexpr char kMagic[4] = {'Q', 'G', 'W', '1'};

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    const U bits = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(std::uint8_t(bits >> (8 * i)));
}

template <class T>
T get_le(const std::uint8_t* p) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= U(p[i]) << (8 * i);
    return std::bit_cast<T>(bits);
}

}  // namespace

Snapshot Snapshot::from_state(const SpectralField& theta, double t, const ModelParams& p) {
    return Snapshot{t, p.model, p.alpha, p.kappa, p.mu, inverse_transform(theta)};
}

std::size_t snapshot_size(int n) { return kSnapshotHeaderBytes + 8 * std::size_t(n) * std::size_t(n); }

std::vector<std::uint8_t> encode_snapshot(const Snapshot& s) {
    const int n = s.theta.n();
    std::vector<std::uint8_t> out;
    out.reserve(snapshot_size(n));
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    put_le<std::uint32_t>(out, kSnapshotVersion);
    put_le<std::uint32_t>(out, std::uint32_t(n));
    put_le<double>(out, s.t);
    put_le<double>(out, s.alpha);
    put_le<double>(out, s.kappa);
    put_le<double>(out, s.mu);
    out.push_back(std::uint8_t(s.model));
    out.insert(out.end(), 7, std::uint8_t{0});
    for (double v : s.theta.values()) put_le<double>(out, v);
    return out;
}

Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kSnapshotHeaderBytes)
        throw CorruptSnapshot("length", "file has " + std::to_string(bytes.size()) + " bytes, header needs 52");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw CorruptSnapshot("magic", "expected QGW1");
    const auto version = get_le<std::uint32_t>(bytes.data() + 4);
    if (version != kSnapshotVersion) throw CorruptSnapshot("version", "unsupported version " + std::to_string(version));
    const auto n = get_le<std::uint32_t>(bytes.data() + 8);
    if (n < 8 || n % 2 != 0 || n > 65536) throw CorruptSnapshot("length", "invalid grid size " + std::to_string(n));
    if (bytes.size() != snapshot_size(int(n)))
        throw CorruptSnapshot("length", "expected " + std::to_string(snapshot_size(int(n))) + " bytes, found " +
                                            std::to_string(bytes.size()));
    const std::uint8_t model = bytes[44];
    if (model > 2) throw CorruptSnapshot("model", "unknown model tag " + std::to_string(model));

    const Grid grid{int(n)};
    std::vector<double> values(grid.physical_size());
    const std::uint8_t* p = bytes.data() + kSnapshotHeaderBytes;
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = get_le<double>(p + 8 * i);
    return Snapshot{get_le<double>(bytes.data() + 12), Model(model), get_le<double>(bytes.data() + 20),
                    get_le<double>(bytes.data() + 28), get_le<double>(bytes.data() + 36),
                    PhysicalField(grid, std::move(values))};
}

void save_snapshot(const std::string& path, const Snapshot& s) {
    const auto bytes = encode_snapshot(s);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw IoError("failed writing '" + path + "'");
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

}  // namespace qglab
