#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pottslab {

struct SnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text snapshot: header line
//   POTTSLAB v1 <kind> <d> <n> <q> <beta> <seed> <sweep>
// followed by the payload, one symbol per site label (spin, digits 1..q) or
// per edge bit (bond), in the documented enumeration order, with a newline
// after every n+1 symbols. Colors above 9 are out of the format's range.
struct Snapshot {
    std::string kind; // "spin" or "bond"
    int d = 3;
    int n = 1;
    int q = 2;
    double beta = 1.0;
    uint64_t seed = 0;
    int64_t sweep = 0;
    std::vector<uint8_t> payload;

    int64_t expected_payload() const;
    bool operator==(const Snapshot& o) const = default;
};

std::string render_snapshot(const Snapshot& s);
Snapshot parse_snapshot(const std::string& text);

void save_snapshot(const Snapshot& s, const std::string& path);
Snapshot load_snapshot(const std::string& path);

struct PhasePartition;

// Partition file: "POTTSLAB partition <d> <n> <f> <q>" + one label digit per
// block in lexicographic order.
std::string render_partition(const PhasePartition& p);
PhasePartition parse_partition(const std::string& text);
void save_partition(const PhasePartition& p, const std::string& path);
PhasePartition load_partition(const std::string& path);

} // namespace pottslab
