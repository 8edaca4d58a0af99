#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "stokeslab/io.hpp"
#include "stokeslab/quad.hpp"

using namespace stokeslab;

namespace {

FieldSample sample(double x1, double x2, double xn, double t,
                   const std::string& comp, double v, double e) {
  FieldSample s;
  s.location.point.tangential = {x1, x2};
  s.location.point.normal = xn;
  s.location.t = t;
  s.component = comp;
  s.value = v;
  s.error_estimate = e;
  return s;
}

}  // namespace

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e307, M_PI,
                   0.017482823917577467, -0.0, 63.095734448019325}) {
    double back = std::strtod(format_double(v).c_str(), nullptr);
    CHECK(back == v);
  }
}

TEST_CASE("csv round trip is bit identical") {
  std::string path = "test_series_roundtrip.csv";
  std::vector<FieldSample> rows;
  rows.push_back(sample(5.0, -5.0, 0.0, 0.5001, "Bw1", -1.234e-5, 2e-9));
  rows.push_back(sample(1.0 / 3.0, M_PI, 1e-300, 0.75, "pi_b", 0.1, 0.0));
  emit_series(path, rows, 3);
  int n = 0;
  auto back = read_series(path, &n);
  CHECK(n == 3);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(back[k].location.point.tangential == rows[k].location.point.tangential);
    CHECK(back[k].location.point.normal == rows[k].location.point.normal);
    CHECK(back[k].location.t == rows[k].location.t);
    CHECK(back[k].component == rows[k].component);
    CHECK(back[k].value == rows[k].value);
    CHECK(back[k].error_estimate == rows[k].error_estimate);
  }
  std::remove(path.c_str());
}

TEST_CASE("empty series produces a header-only file") {
  std::string path = "test_series_empty.csv";
  emit_series(path, {}, 3);
  std::ifstream in(path);
  std::string line;
  CHECK(std::getline(in, line));
  CHECK(line == "x1,x2,xn,t,component,value,error");
  CHECK(!std::getline(in, line));
  std::remove(path.c_str());
}

TEST_CASE("large series round trips bit identically") {
  std::string path = "test_series_large.csv";
  std::vector<FieldSample> rows;
  for (int k = 0; k < 10000; ++k) {
    double v = std::ldexp(counter_uniform(3, k) - 0.5, (k % 600) - 300);
    rows.push_back(sample(counter_uniform(4, k), -counter_uniform(5, k),
                          counter_uniform(6, k), 0.5 + 1e-4 * k, "W1", v,
                          std::fabs(v) * 1e-7));
  }
  emit_series(path, rows, 3);
  auto back = read_series(path, nullptr);
  REQUIRE(back.size() == rows.size());
  bool all = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (back[k].value != rows[k].value) all = false;
    if (back[k].location.t != rows[k].location.t) all = false;
  }
  CHECK(all);
  std::remove(path.c_str());
}

TEST_CASE("json writing is deterministic") {
  nlohmann::json j;
  j["b"] = 2;
  j["a"] = {{"y", 1.5}, {"x", format_double(1.0 / 3.0)}};
  write_json("test_json_a.json", j);
  write_json("test_json_b.json", j);
  std::ifstream a("test_json_a.json"), b("test_json_b.json");
  std::string sa((std::istreambuf_iterator<char>(a)),
                 std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)),
                 std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK(!sa.empty());
  std::remove("test_json_a.json");
  std::remove("test_json_b.json");
}
