#include "cli_runner.hpp"
#include "doctest.h"

using namespace cli_runner;

namespace {

std::string out_flag(const fs::path& dir) { return "--out \"" + dir.string() + "\""; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("shadow on a true orbit") {
    const auto dir = scratch("cli_shadow_true");
    CHECK(run("shadow --system cat --seed 1 --length 100 --eps 1e-9 " + out_flag(dir)) == 0);
    const auto s = summary(dir);
    CHECK(s.at("status") == "pass");
    CHECK(s.at("result").at("shadow").at("achieved_eps").get<double>() <= 1e-12);
    CHECK(line_count(slurp(dir / "pseudo_orbit.csv")) == 102);
    CHECK(line_count(slurp(dir / "shadow_orbit.csv")) == 102);
  }

  TEST_CASE("shadow on a random pseudo-orbit") {
    const auto dir = scratch("cli_shadow_random");
    CHECK(run("shadow --system cat --seed 3 --delta 1e-6 --eps 1e-5 " + out_flag(dir)) == 0);
    const auto s = summary(dir);
    CHECK(s.at("result").at("shadow").at("achieved_eps").get<double>() <= 1e-5);
    CHECK(s.at("result").at("pseudo_orbit").at("defect").get<double>() < 1e-6);

    const auto again = scratch("cli_shadow_input");
    CHECK(run("shadow --system cat --eps 1e-5 --input \"" + (dir / "pseudo_orbit.csv").string() + "\" " + out_flag(again)) == 0);
    CHECK(summary(again).at("result").at("pseudo_orbit").at("source") == "file");
  }

  TEST_CASE("shadow above the modulus fails with a certificate") {
    const auto dir = scratch("cli_shadow_fail");
    CHECK(run("shadow --system cat --seed 3 --delta 0.2 --eps 0.01 " + out_flag(dir)) == 2);
    const auto s = summary(dir);
    CHECK(s.at("status") == "failed");
    CHECK(s.at("result").contains("certificate"));
  }

  TEST_CASE("shadow rejects a malformed input file") {
    const auto dir = scratch("cli_shadow_bad");
    std::ofstream(dir / "bad.csv") << "index,x,y\n0,0.1,0.2\n";
    CHECK(run("shadow --system cat --input \"" + (dir / "bad.csv").string() + "\" " + out_flag(dir)) == 1);
  }

  TEST_CASE("cantor rows") {
    const auto dir = scratch("cli_cantor");
    CHECK(run("cantor --system cat --eps 0.2 --kmax 5 --horizon 50 --seed 1 " + out_flag(dir)) == 0);
    CHECK(line_count(slurp(dir / "cantor.csv")) == 33);
    CHECK(summary(dir).at("result").at("points") == 32);

    const auto zero = scratch("cli_cantor_zero");
    CHECK(run("cantor --system cat --eps 0.2 --kmax 0 --seed 1 " + out_flag(zero)) == 0);
    CHECK(line_count(slurp(zero / "cantor.csv")) == 2);

    const auto ns = scratch("cli_cantor_ns");
    CHECK(run("cantor --system ns --eps 0.1 --kmax 2 --seed 1 " + out_flag(ns)) == 2);
    CHECK(summary(ns).at("result").at("certificate").at("kind") == "sensitivity_witness");
  }

  TEST_CASE("chainrec class counts") {
    const auto ns = scratch("cli_chain_ns");
    CHECK(run("chainrec --system ns --resolution 512 --seed 1 --points \"0.25;0.5\" " + out_flag(ns)) == 0);
    CHECK(summary(ns).at("result").at("classes").at("class_count") == 2);
    CHECK(fs::exists(ns / "graph.txt"));
    CHECK(slurp(ns / "classes.csv").rfind("box_index,class_id\n", 0) == 0);
    CHECK(fs::exists(ns / "basins.csv"));

    const auto cat = scratch("cli_chain_cat");
    CHECK(run("chainrec --system cat --resolution 64x64 --seed 1 " + out_flag(cat)) == 0);
    CHECK(summary(cat).at("result").at("classes").at("class_count") == 1);

    const auto bad = scratch("cli_chain_missing");
    CHECK(run("chainrec --system ns --seed 1 " + out_flag(bad)) == 1);
  }

  TEST_CASE("sensitivity, cwx and refute") {
    const auto sens = scratch("cli_sens");
    CHECK(run("sensitivity --system cat --samples 16 --radii 1e-3 --horizon 30 --seed 1 " + out_flag(sens)) == 0);
    CHECK(fs::exists(sens / "sensitivity.csv"));

    const auto cwx = scratch("cli_cwx");
    CHECK(run("cwx --system cube --eps 0.1 --horizon 50 " + out_flag(cwx)) == 0);
    CHECK(fs::exists(cwx / "witness.csv"));
    CHECK(run("cwx --system shift --eps 0.1 " + out_flag(scratch("cli_cwx_shift"))) == 1);

    const auto ref = scratch("cli_refute");
    CHECK(run("refute --system cat --eps 0.2 --kmax 4 --horizon 50 --seed 1 " + out_flag(ref)) == 0);
    CHECK(line_count(slurp(ref / "refute.csv")) == 17);
    const auto refns = scratch("cli_refute_ns");
    CHECK(run("refute --system ns --eps 0.1 --kmax 2 --horizon 50 --seed 1 " + out_flag(refns)) == 2);
    CHECK(summary(refns).at("result").at("certificate").at("kind") == "refuter_precondition");
  }

  TEST_CASE("config file with flag overrides") {
    const auto dir = scratch("cli_config");
    std::ofstream(dir / "run.ini") << "system=cat\neps=0.2\nkmax=3\nseed=4\n";
    CHECK(run("cantor --config \"" + (dir / "run.ini").string() + "\" --kmax 2 " + out_flag(dir)) == 0);
    const auto s = summary(dir);
    CHECK(s.at("config").at("kmax") == 2);
    CHECK(s.at("config").at("seed") == 4);
    CHECK(s.at("result").at("points") == 4);
  }

  TEST_CASE("usage errors") {
    CHECK(run("") == 1);
    CHECK(run("bogus") == 1);
    CHECK(run("--help") == 0);
    CHECK(run("cantor --system cat --kmax 2 --seed 1 --out \"" + scratch("cli_noeps").string() + "\"") == 1);
    CHECK(run("shadow --system nonsense --seed 1 --out \"" + scratch("cli_nosys").string() + "\"") == 1);
  }
}
