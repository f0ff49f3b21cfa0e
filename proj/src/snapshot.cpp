#include "pottslab/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pottslab/phase.hpp"

namespace pottslab {

int64_t Snapshot::expected_payload() const {
    int64_t sites = 1;
    for (int a = 0; a < d; ++a) sites *= (n + 1);
    if (kind == "spin") return sites;
    if (kind == "bond") {
        // d * n * (n+1)^{d-1}
        int64_t e = static_cast<int64_t>(d) * n;
        for (int a = 0; a < d - 1; ++a) e *= (n + 1);
        return e;
    }
    throw SnapshotError("unknown snapshot kind: " + kind);
}

std::string render_snapshot(const Snapshot& s) {
    if (s.kind != "spin" && s.kind != "bond")
        throw SnapshotError("unknown snapshot kind: " + s.kind);
    if (s.q > 9) throw SnapshotError("snapshot format holds at most 9 colors");
    if (static_cast<int64_t>(s.payload.size()) != s.expected_payload())
        throw SnapshotError("payload length does not match header");
    std::ostringstream out;
    char beta[64];
    std::snprintf(beta, sizeof(beta), "%.17g", s.beta);
    out << "POTTSLAB v1 " << s.kind << ' ' << s.d << ' ' << s.n << ' ' << s.q << ' '
        << beta << ' ' << s.seed << ' ' << s.sweep << '\n';
    int64_t per_line = s.n + 1;
    for (size_t i = 0; i < s.payload.size(); ++i) {
        out << static_cast<char>('0' + s.payload[i]);
        if ((i + 1) % per_line == 0) out << '\n';
    }
    if (s.payload.size() % per_line != 0) out << '\n';
    return out.str();
}

Snapshot parse_snapshot(const std::string& text) {
    std::istringstream in(text);
    std::string magic, version;
    Snapshot s;
    in >> magic >> version >> s.kind >> s.d >> s.n >> s.q >> s.beta >> s.seed >> s.sweep;
    if (!in || magic != "POTTSLAB" || version != "v1")
        throw SnapshotError("bad snapshot header");
    int64_t expected = s.expected_payload(); // rejects unknown kinds
    s.payload.reserve(expected);
    char c;
    while (in.get(c)) {
        if (c == '\n' || c == '\r') continue;
        if (c < '0' || c > '9') throw SnapshotError("bad payload symbol");
        s.payload.push_back(static_cast<uint8_t>(c - '0'));
    }
    if (static_cast<int64_t>(s.payload.size()) != expected)
        throw SnapshotError("payload length mismatch: expected " +
                            std::to_string(expected) + ", found " +
                            std::to_string(s.payload.size()));
    uint8_t lo = s.kind == "spin" ? 1 : 0;
    uint8_t hi = s.kind == "spin" ? static_cast<uint8_t>(s.q) : 1;
    for (uint8_t v : s.payload)
        if (v < lo || v > hi) throw SnapshotError("payload symbol out of range");
    return s;
}

void save_snapshot(const Snapshot& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SnapshotError("cannot write snapshot: " + path);
    out << render_snapshot(s);
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot read snapshot: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_snapshot(ss.str());
}

std::string render_partition(const PhasePartition& p) {
    if (p.q > 9) throw SnapshotError("partition format holds at most 9 phases");
    std::ostringstream out;
    out << "POTTSLAB partition " << p.grid.d << ' ' << p.grid.n << ' ' << p.grid.f << ' '
        << p.q << '\n';
    int64_t per_line = p.grid.blocks_per_axis[p.grid.d - 1];
    for (int64_t b = 0; b < p.grid.num_blocks; ++b) {
        out << static_cast<char>('0' + p.label[b]);
        if ((b + 1) % per_line == 0) out << '\n';
    }
    return out.str();
}

PhasePartition parse_partition(const std::string& text) {
    std::istringstream in(text);
    std::string magic, kind;
    int d, n, f, q;
    in >> magic >> kind >> d >> n >> f >> q;
    if (!in || magic != "POTTSLAB" || kind != "partition")
        throw SnapshotError("bad partition header");
    PhasePartition p;
    p.grid = BlockGrid::make(d, n, f);
    p.q = q;
    char c;
    while (in.get(c)) {
        if (c == '\n' || c == '\r') continue;
        if (c < '0' || c > '9') throw SnapshotError("bad partition symbol");
        p.label.push_back(static_cast<uint8_t>(c - '0'));
    }
    if (static_cast<int64_t>(p.label.size()) != p.grid.num_blocks)
        throw SnapshotError("partition length mismatch: expected " +
                            std::to_string(p.grid.num_blocks) + ", found " +
                            std::to_string(p.label.size()));
    for (uint8_t l : p.label)
        if (l > q) throw SnapshotError("partition label out of range");
    return p;
}

void save_partition(const PhasePartition& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SnapshotError("cannot write partition: " + path);
    out << render_partition(p);
}

PhasePartition load_partition(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot read partition: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_partition(ss.str());
}

} // namespace pottslab
