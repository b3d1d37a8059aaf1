#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "wormhardy/analysis.hpp"
#include "wormhardy/checks.hpp"
#include "wormhardy/io.hpp"

using namespace wormhardy;
namespace fs = std::filesystem;

namespace {
const GridSpec g = make_grid(10.0, 64, 2);

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "wormhardy_io_test") { fs::create_directories(path); }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};
} // namespace

TEST_CASE("csv field round trip is exact") {
    TempDir tmp;
    gaussian_rng rng(51);
    const SampledField f = to_physical(random_band_spectrum(g, rng, BandSpec{4.0, 2}));
    write_field_csv(tmp.file("f.csv"), f);
    const SampledField back = read_field_csv(tmp.file("f.csv"), g);
    for (std::size_t i = 0; i < f.values.size(); ++i) REQUIRE(back.values[i] == f.values[i]);
}

TEST_CASE("binary field round trip is exact and shape-checked") {
    TempDir tmp;
    gaussian_rng rng(52);
    const SampledField f = to_physical(random_band_spectrum(g, rng, BandSpec{4.0, 2}));
    write_field_bin(tmp.file("f.bin"), f);
    const SampledField back = read_field_bin(tmp.file("f.bin"), g);
    for (std::size_t i = 0; i < f.values.size(); ++i) REQUIRE(back.values[i] == f.values[i]);

    const GridSpec g2 = make_grid(10.0, 128, 2);
    REQUIRE_THROWS_AS(read_field_bin(tmp.file("f.bin"), g2), io_error);
    REQUIRE_THROWS_AS(read_field_bin(tmp.file("missing.bin"), g), io_error);
}

TEST_CASE("mode coefficient csv round trip") {
    TempDir tmp;
    ModeCoefficients mc;
    mc.grid = g.xgrid();
    gaussian_rng rng(53);
    for (int j : {-1, 0, 2}) {
        auto& prof = mc.g[j];
        prof.assign(std::size_t(g.nx), cplx(0, 0));
        for (int k = 0; k < g.nx; ++k)
            if (std::abs(g.xi(k)) < 4.0) prof[std::size_t(k)] = rng.cnormal();
    }
    write_modes_csv(tmp.file("m.csv"), mc);
    const ModeCoefficients back = read_modes_csv(tmp.file("m.csv"), g.xgrid());
    REQUIRE(back.g.size() == mc.g.size());
    for (const auto& [j, prof] : mc.g) {
        REQUIRE(back.g.count(j) == 1);
        for (int k = 0; k < g.nx; ++k) REQUIRE(back.g.at(j)[std::size_t(k)] == prof[std::size_t(k)]);
    }
}

TEST_CASE("csv rejects malformed input") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("bad.csv"));
        out << "nope\n1,2,3,4\n";
    }
    REQUIRE_THROWS_AS(read_field_csv(tmp.file("bad.csv"), g), io_error);

    gaussian_rng rng(54);
    const SampledField f = to_physical(random_band_spectrum(g, rng, BandSpec{4.0, 2}));
    write_field_csv(tmp.file("f.csv"), f);
    const GridSpec g2 = make_grid(8.0, 64, 2); // wrong L: coordinates mismatch
    REQUIRE_THROWS_AS(read_field_csv(tmp.file("f.csv"), g2), io_error);
}

TEST_CASE("report json is deterministic for a fixed config") {
    RunConfig cfg;
    cfg.beta = 3.5;
    cfg.L = 12.0;
    cfg.nx = 256;
    cfg.nj = 4;
    const auto a = render_report_json(cfg, run_checks("k0_closed_value", cfg));
    const auto b = render_report_json(cfg, run_checks("k0_closed_value", cfg));
    REQUIRE(a == b);
    REQUIRE(a.find("\"check_name\": \"k0_closed_value\"") != std::string::npos);
    REQUIRE(a.find("\"status\": \"pass\"") != std::string::npos);
}
