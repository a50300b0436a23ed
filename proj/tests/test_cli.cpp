#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"

#include "support/process.hpp"

namespace {

std::string cli(const std::string& args) {
  return std::string(CONTRA_CLI_PATH) + " " + args + " 2>/dev/null";
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("contra_cli_test_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze json is byte-identical across runs") {
  const auto a = process::run(cli("analyze --dataset tpc --samples 20000 --seed 42 --format json"));
  const auto b = process::run(cli("analyze --dataset tpc --samples 20000 --seed 42 --format json"));
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["entries"].size() == 35);
  CHECK(j["entries"][0].contains("delta_l"));
}

TEST_CASE("thread count does not change the output") {
  const auto a = process::run(cli("analyze --dataset plaque --samples 10000 --seed 5 --threads 1"));
  const auto b = process::run(cli("analyze --dataset plaque --samples 10000 --seed 5 --threads 4"));
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
  const auto few = process::run(std::string(CONTRA_CLI_PATH) +
                                " analyze --dataset tpc --samples 10 --seed 1 2>&1");
  CHECK(few.exit_code == 2);
  CHECK(few.out.find("K below minimum") != std::string::npos);
  CHECK(process::run(cli("analyze --dataset xyz --seed 1")).exit_code == 2);
  CHECK(process::run(cli("analyze --input /nonexistent/table.csv --seed 1")).exit_code == 1);
  CHECK(process::run(cli("test --dataset tpc --sign decrease --threshold 0 --seed 1")).exit_code == 2);
  CHECK(process::run(cli("analyze --dataset tpc --seed 1 --samples 1000 --output /nonexistent/x.json"))
            .exit_code == 1);
  CHECK(process::run(cli("bogus")).exit_code == 2);
}

TEST_CASE("invalid input rows exit 2 and list every error") {
  const auto path = temp_path("bad.csv");
  {
    std::ofstream out(path);
    out << "id,study,year,group_x,x_mean,x_sd,x_n,group_y,y_mean,y_sd,y_n,units,alpha_dm,"
           "species,pmid,location,reported_sign\n"
        << "1,A,2000,c,10,2,1,e,12,2,5,mg,0.05,ms,1,F1,1\n"
        << "2,B,2000,c,10,2,4,e,12,2,5,mg,0,ms,1,F1,1\n";
  }
  const auto r = process::run(std::string(CONTRA_CLI_PATH) + " validate --input " + path + " 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("row 2, x_n") != std::string::npos);
  CHECK(r.out.find("row 3, alpha_dm") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("validate bundled data") {
  const auto r = process::run(cli("validate --dataset tpc"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("35 records, 0 errors") != std::string::npos);
}

TEST_CASE("missing seed is drawn and reported") {
  const auto r = process::run(std::string(CONTRA_CLI_PATH) +
                              " analyze --dataset tpc --samples 1000 2>&1 >/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("seed: ", 0) == 0);
}

TEST_CASE("test prints passing ids with scores") {
  const auto r = process::run(cli("test --dataset tpc --sign increase --threshold 0.5 --samples 20000 --seed 3"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("# id\tdelta_l\trank") != std::string::npos);
}

TEST_CASE("plot and supplement files") {
  const auto svg = temp_path("plot.svg");
  const auto html = temp_path("supp.html");
  const auto r = process::run(cli("plot --dataset plaque --sign decrease --threshold -0.20 --samples 5000 --seed 1 -o " +
                                  svg + " --supplement " + html));
  REQUIRE(r.exit_code == 0);
  CHECK(process::read_file(svg).find("class=\"threshold\"") != std::string::npos);
  CHECK(process::read_file(html).find("contra-supplement") != std::string::npos);
  CHECK(process::run(cli("plot --dataset plaque --sign decrease --threshold 0.2 --seed 1")).exit_code == 2);
  std::filesystem::remove(svg);
  std::filesystem::remove(html);
}

TEST_CASE("csv format") {
  const auto r = process::run(cli("analyze --dataset tpc --samples 1000 --seed 1 --format csv"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("rank,id,study", 0) == 0);
}

}  // TEST_SUITE
