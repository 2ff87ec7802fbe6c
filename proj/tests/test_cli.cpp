#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cli_harness.hpp"

using holo::testing::Cli;

TEST_CASE("pencil classify") {
  Cli cli;
  const auto z1 = cli.write("z1.json", R"({"center":[1,0],"dim":1,"coefficients":[[[0]],[[1]]]})");
  const auto z2 = cli.write("z2.json", R"({"center":[1,0],"dim":1,"coefficients":[[[0]],[[0]],[[1]]]})");
  const auto z3 = cli.write("z3.json", R"({"center":[1,0],"dim":1,"coefficients":[[[0]],[[0]],[[0]],[[1]]]})");
  auto r = cli.run("pencil classify " + z1);
  CHECK(r.code == 0);
  CHECK(r.json()["order"] == 1);
  CHECK(r.json()["dim_K"] == 1);
  r = cli.run("pencil classify " + z2);
  CHECK(r.code == 0);
  CHECK(r.json()["order"] == 2);
  CHECK(r.json()["dim_K1"] == 1);
  r = cli.run("pencil classify " + z3);
  CHECK(r.code == 3);
  CHECK(r.out.find("order ≥ 3 or non-invertible pencil") != std::string::npos);
  CHECK(cli.run("pencil classify " + cli.write("bad.json", "{not json")).code == 2);
  CHECK(cli.run("pencil classify " + cli.dir + "/missing.json").code == 2);
  CHECK(cli.run("pencil classify " + cli.write("rag.json", R"({"center":[1,0],"dim":2,"coefficients":[[[0,1],[1]]]})")).code == 2);
  CHECK(cli.run("pencil classify " + z1 + " --complements sideways").code == 2);
}

TEST_CASE("pencil laurent") {
  Cli cli;
  const auto z1 = cli.write("z1.json", R"({"center":[1,0],"dim":1,"coefficients":[[[0]],[[1]]]})");
  auto r = cli.run("pencil laurent " + z1 + " --max-order 1");
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["m"] == 1);
  CHECK(j["N"]["-1"].dump() == "[[[1.0,0.0]]]");
  CHECK(j["N"]["0"].dump() == "[[[0.0,0.0]]]");
  CHECK(j["N"]["1"].dump() == "[[[0.0,0.0]]]");

  const auto d = cli.write("d.json", R"({"center":[1,0],"dim":2,"coefficients":[[[0,0],[0,1]],[[1,0],[0,0]]]})");
  r = cli.run("pencil laurent " + d + " --max-order 0");
  REQUIRE(r.code == 0);
  CHECK(r.json()["N"]["-1"].dump() == "[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]]");
  CHECK(r.json()["N"]["0"].dump() == "[[[0.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]");

  const auto inv = cli.write("inv.json", R"({"center":[1,0],"dim":1,"coefficients":[[[2]],[[1]]]})");
  r = cli.run("pencil laurent " + inv);
  CHECK(r.code == 3);
  CHECK(r.out.find("no singularity at center") != std::string::npos);
}

TEST_CASE("pencil verify") {
  Cli cli;
  const auto z1 = cli.write("z1.json", R"({"center":[1,0],"dim":1,"coefficients":[[[0]],[[1]]]})");
  auto r = cli.run("pencil verify " + z1);
  REQUIRE(r.code == 0);
  CHECK(r.json()["status"] == "PASS");
  CHECK(r.json()["max_deviation"].get<double>() <= 1e-12);

  const auto good = cli.run("pencil laurent " + z1 + " --max-order 2");
  auto e = good.json();
  const auto exp_ok = cli.write("e_ok.json", e.dump());
  CHECK(cli.run("pencil verify " + z1 + " --expansion " + exp_ok).code == 0);
  e["N"]["0"][0][0][0] = 0.01;
  const auto exp_bad = cli.write("e_bad.json", e.dump());
  r = cli.run("pencil verify " + z1 + " --expansion " + exp_bad);
  CHECK(r.code == 1);
  CHECK(r.json()["status"] == "FAIL");

  const auto inv = cli.write("inv.json", R"({"center":[1,0],"dim":1,"coefficients":[[[2]],[[1]]]})");
  r = cli.run("pencil verify " + inv);
  CHECK(r.code == 3);
  CHECK(r.out.find("no singularity at center") != std::string::npos);
}

TEST_CASE("ar commands") {
  Cli cli;
  const auto rw = cli.write("rw.json", R"({"dim":1,"ar":[[[1]]],"noise":{"covariance":[[1]],"seed":3}})");
  auto r = cli.run("ar classify " + rw);
  REQUIRE(r.code == 0);
  CHECK(r.json()["d"] == 1);
  CHECK(r.json()["N_minus1"].dump() == "[[[-1.0,0.0]]]");

  const auto explosive = cli.write("ex.json", R"({"dim":1,"ar":[[[1.5]]]})");
  r = cli.run("ar classify " + explosive);
  CHECK(r.code == 4);
  CHECK(r.out.find("0.666666666667") != std::string::npos);

  CHECK(cli.run("ar classify " + cli.write("i0.json", R"({"dim":1,"ar":[[[0.5]]]})")).code == 3);
  CHECK(cli.run("ar classify " + cli.write("i3.json", R"({"dim":1,"ar":[[[3]],[[-3]],[[1]]]})")).code == 3);

  r = cli.run("ar represent " + cli.write("st.json", R"({"dim":1,"ar":[[[1.5]],[[-0.5]]]})"));
  REQUIRE(r.code == 0);
  CHECK(r.json()["tail_bound"].get<double>() < 1e-11);

  const auto zero = cli.write("zero.json", R"({"dim":2,"ar":[[[1,0],[0,0.5]]],"noise":{"covariance":[[0,0],[0,0]],"seed":1}})");
  const std::string out = cli.dir + "/path.json";
  r = cli.run("ar simulate " + zero + " --t 20 --output " + out);
  REQUIRE(r.code == 0);
  const auto path = cli.read_json(out);
  CHECK(path["values"].size() == 21);
  for (const auto& v : path["values"]) CHECK(v.dump() == "[[0.0,0.0],[0.0,0.0]]");

  r = cli.run("ar crossval " + rw + " --t 200");
  CHECK(r.code == 0);
  CHECK(r.json()["status"] == "PASS");
  CHECK(cli.run("ar crossval " + rw + " --t 20 --burnin 0 --max-ma 5").code == 0);
  const auto st = cli.write("st2.json", R"({"dim":1,"ar":[[[1.5]],[[-0.5]]]})");
  CHECK(cli.run("ar crossval " + st + " --burnin 3").code == 2);
}

TEST_CASE("byte-identical output under fixed seeds") {
  Cli cli;
  const auto p = cli.write("p.json",
                           R"({"center":[1,0],"dim":2,"coefficients":[[[1,1],[1,1]],[[0.5,[0,1]],[2,-1]],[[0,0],[0,1]]]})");
  const auto a = cli.run("pencil laurent " + p + " --complements random --seed 7");
  const auto b = cli.run("pencil laurent " + p + " --complements random --seed 7");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto m = cli.write("m.json", R"({"dim":1,"ar":[[[1]]],"noise":{"covariance":[[2]]}})");
  const auto s1 = cli.run("ar simulate " + m + " --t 50 --seed 4");
  const auto s2 = cli.run("ar simulate " + m + " --t 50 --seed 4");
  const auto s3 = cli.run("ar simulate " + m + " --t 50 --seed 5");
  CHECK(s1.out == s2.out);
  CHECK(s1.out != s3.out);
}
