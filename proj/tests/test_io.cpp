#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pottslab/config.hpp"
#include "pottslab/phase.hpp"
#include "pottslab/rng.hpp"
#include "pottslab/snapshot.hpp"

using namespace pottslab;

namespace {
std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}
} // namespace

TEST_CASE("config parse and render round-trip") {
    std::string text = "model.q = 2\nmodel.beta = 1.25\n# a comment\nrun.seed = 7\n";
    ExperimentConfig cfg = ExperimentConfig::parse_string(text);
    CHECK(cfg.get("model.q") == "2");
    CHECK(cfg.get_int("model.q", 0) == 2);
    CHECK(cfg.get_double("model.beta", 0) == doctest::Approx(1.25));
    CHECK(cfg.get_u64("run.seed", 0) == 7);
    CHECK(cfg.get("missing", "fallback") == "fallback");
    ExperimentConfig again = ExperimentConfig::parse_string(cfg.render());
    CHECK(cfg == again);
    CHECK(again.render() == cfg.render());
}

TEST_CASE("config rejects duplicates and bad lines") {
    CHECK_THROWS_AS(ExperimentConfig::parse_string("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse_string("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse_string("a = 1").get("b"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse_string("a = x").get_int("a", 0), ConfigError);
}

TEST_CASE("require_known names the first stray key") {
    ExperimentConfig cfg = ExperimentConfig::parse_string("model.q = 2\ntypo.key = 1\n");
    CHECK_NOTHROW(cfg.require_known({"model.q", "typo.key"}));
    try {
        cfg.require_known({"model.q"});
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("typo.key") != std::string::npos);
    }
}

TEST_CASE("config hash keys on content") {
    ExperimentConfig a = ExperimentConfig::parse_string("x = 1\n");
    ExperimentConfig b = ExperimentConfig::parse_string("x = 2\n");
    CHECK(config_hash(a) == config_hash(a));
    CHECK(config_hash(a) != config_hash(b));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("config file round-trip") {
    auto path = temp_file("pottslab_cfg_test.cfg");
    {
        std::ofstream out(path);
        out << "model.q = 3\nmodel.beta = 0.5\n";
    }
    ExperimentConfig cfg = ExperimentConfig::parse_file(path.string());
    CHECK(cfg.get_int("model.q", 0) == 3);
    std::filesystem::remove(path);
    CHECK_THROWS(ExperimentConfig::parse_file(path.string()));
}

TEST_CASE("spin snapshot round-trip") {
    RngStream rng(1, 0);
    Snapshot s;
    s.kind = "spin";
    s.d = 2;
    s.n = 3;
    s.q = 4;
    s.beta = 0.875;
    s.seed = 99;
    s.sweep = 12;
    s.payload.resize(s.expected_payload());
    for (auto& c : s.payload) c = static_cast<uint8_t>(1 + rng.next_below(4));
    std::string text = render_snapshot(s);
    Snapshot back = parse_snapshot(text);
    CHECK(back == s);
    CHECK(render_snapshot(back) == text);
}

TEST_CASE("bond snapshot round-trip through files") {
    RngStream rng(2, 0);
    Snapshot s;
    s.kind = "bond";
    s.d = 2;
    s.n = 2;
    s.q = 2;
    s.beta = 1.0;
    s.payload.resize(s.expected_payload());
    for (auto& c : s.payload) c = static_cast<uint8_t>(rng.next_below(2));
    auto path = temp_file("pottslab_snap_test.txt");
    save_snapshot(s, path.string());
    Snapshot back = load_snapshot(path.string());
    CHECK(back == s);
    std::filesystem::remove(path);
}

TEST_CASE("snapshot parse rejects malformed input") {
    Snapshot s;
    s.kind = "spin";
    s.d = 2;
    s.n = 1;
    s.q = 2;
    s.payload.assign(s.expected_payload(), 1);
    std::string good = render_snapshot(s);

    // truncated payload names the expected length
    std::string truncated = good.substr(0, good.size() - 2);
    try {
        parse_snapshot(truncated);
        CHECK(false);
    } catch (const SnapshotError& e) {
        std::string msg = e.what();
        CHECK(msg.find("4") != std::string::npos);
    }

    std::string bad_kind = good;
    bad_kind.replace(bad_kind.find("spin"), 4, "blob");
    CHECK_THROWS_AS(parse_snapshot(bad_kind), SnapshotError);

    CHECK_THROWS_AS(parse_snapshot("not a snapshot"), SnapshotError);

    // out-of-range symbol
    std::string bad_symbol = good;
    bad_symbol[bad_symbol.size() - 2] = '7';
    CHECK_THROWS_AS(parse_snapshot(bad_symbol), SnapshotError);
}

TEST_CASE("snapshot format refuses more than nine colors") {
    Snapshot s;
    s.kind = "spin";
    s.d = 2;
    s.n = 1;
    s.q = 12;
    s.payload.assign(4, 1);
    CHECK_THROWS_AS(render_snapshot(s), SnapshotError);
}

TEST_CASE("partition round-trip") {
    PhasePartition p;
    p.grid = BlockGrid::make(2, 8, 2);
    p.q = 3;
    p.label.resize(p.grid.num_blocks);
    RngStream rng(3, 0);
    for (auto& l : p.label) l = static_cast<uint8_t>(rng.next_below(4));
    std::string text = render_partition(p);
    PhasePartition back = parse_partition(text);
    CHECK(back.grid == p.grid);
    CHECK(back.q == p.q);
    CHECK(back.label == p.label);

    auto path = temp_file("pottslab_part_test.txt");
    save_partition(p, path.string());
    PhasePartition loaded = load_partition(path.string());
    CHECK(loaded.label == p.label);
    std::filesystem::remove(path);
}

TEST_CASE("partition parse rejects label overflow") {
    PhasePartition p;
    p.grid = BlockGrid::make(2, 4, 2);
    p.q = 2;
    p.label.assign(p.grid.num_blocks, 1);
    std::string text = render_partition(p);
    // a label digit above q is invalid
    text[text.size() - 2] = '5';
    CHECK_THROWS(parse_partition(text));
}
