#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "qg/io.hpp"

using namespace qg;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& text)
      : path("io_tmp_" + name) {
    std::ofstream out(path);
    out << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("seventeen digits round-trip doubles exactly") {
  CHECK(fmt17(-0.0) == "0");
  CHECK(fmt17(0.0) == "0");
  CHECK(fmt17(1.0) == "1");
  for (const double x : {1.0 / 3.0, std::sqrt(2.0), 0.1, 1e-17, 6.02214076e23,
                         -2.2250738585072014e-308, 123456789.123456789}) {
    CHECK(std::stod(fmt17(x)) == x);
  }
}

TEST_CASE("quantum groups survive a file round trip bitwise") {
  for (const std::string name : list_builtins()) {
    const QuantumGroup g = make_builtin(name);
    const std::string path = "io_tmp_" + name + ".qg";
    write_quantum_group(g, path);
    const QuantumGroup back = read_quantum_group(path);
    std::remove(path.c_str());
    INFO(name);
    CHECK(back.name == g.name);
    CHECK(back.dim == g.dim);
    CHECK(back.blocks == g.blocks);
    CHECK((back.delta - g.delta).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("serialized form is deterministic") {
  const QuantumGroup g = make_builtin("kac_paljutkin");
  CHECK(quantum_group_to_json(g).dump(2) == quantum_group_to_json(g).dump(2));
}

TEST_CASE("numeric entries may be numbers, strings, or pairs") {
  const std::string base = R"({"dim": 1, "blocks": [1], "delta": [[ENTRY]]})";
  const auto with = [&](const std::string& entry) {
    std::string text = base;
    text.replace(text.find("ENTRY"), 5, entry);
    return quantum_group_from_json(json::parse(text)).delta(0, 0);
  };
  CHECK(with("1") == cplx(1.0, 0.0));
  CHECK(with("\"1\"") == cplx(1.0, 0.0));
  CHECK(with("[1, 0]") == cplx(1.0, 0.0));
  CHECK(with("[\"1\", \"0\"]") == cplx(1.0, 0.0));
  CHECK(with("[0.25, -1]") == cplx(0.25, -1.0));
  CHECK(with("\"2.5e-3\"") == cplx(2.5e-3, 0.0));
}

TEST_CASE("malformed descriptions raise parse failures") {
  const auto reject = [](const std::string& text) {
    CHECK_THROWS_AS(quantum_group_from_json(json::parse(text)), ParseError);
  };
  reject(R"([1, 2, 3])");
  reject(R"({"dim": 1, "blocks": [1]})");
  reject(R"({"dim": 3, "blocks": [1, 1], "delta": []})");
  reject(R"({"dim": 1.5, "blocks": [1], "delta": [["1"]]})");
  reject(R"({"dim": 1, "blocks": [0], "delta": [["1"]]})");
  reject(R"({"dim": 1, "blocks": [1], "delta": [["1"], ["0"]]})");
  reject(R"({"dim": 1, "blocks": [1], "delta": [["1", "0", "0"]]})");
  reject(R"({"dim": 1, "blocks": [1], "delta": [[[1, 0, 0]]]})");
  reject(R"({"dim": 1, "blocks": [1], "delta": [["abc"]]})");
  reject(R"({"dim": 1, "blocks": [1], "delta": [["1.5x"]]})");
  reject(R"({"dim": 1, "blocks": [1], "delta": [["1"]], "name": 7})");

  const TempFile broken("broken.qg", "{ this is not json");
  CHECK_THROWS_AS(read_quantum_group(broken.path), ParseError);
  CHECK_THROWS_AS(read_quantum_group("io_tmp_does_not_exist.qg"), ParseError);
}

TEST_CASE("multiplication tables read back from files") {
  const TempFile ok("cyclic3.json", R"({"n": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]})");
  const CayleyTable t = read_cayley(ok.path);
  CHECK(t.n == 3);
  CHECK(t.identity == 0);
  CHECK(t.table == cyclic_table(3).table);

  const TempFile bad_shape("bad_shape.json", R"({"n": 2, "table": [[0,1]]})");
  CHECK_THROWS_AS(read_cayley(bad_shape.path), ParseError);
  const TempFile no_table("no_table.json", R"({"n": 2})");
  CHECK_THROWS_AS(read_cayley(no_table.path), ParseError);
  const TempFile floats("floats.json", R"({"n": 2, "table": [[0.5, 1], [1, 0]]})");
  CHECK_THROWS_AS(read_cayley(floats.path), ParseError);

  // well-formed file, group axioms broken: subtraction mod 3 has no identity
  const TempFile subtraction("sub3.json",
                             R"({"n": 3, "table": [[0,2,1],[1,0,2],[2,1,0]]})");
  try {
    read_cayley(subtraction.path);
    FAIL("expected a rejection");
  } catch (const Error& e) {
    CHECK(e.code == "InvalidTable");
  }
}
