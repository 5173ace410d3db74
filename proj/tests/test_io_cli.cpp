#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "gzroots/atypical.hpp"
#include "gzroots/cli.hpp"
#include "gzroots/errors.hpp"
#include "gzroots/io.hpp"

using namespace gz;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gzroots_test_" + name)).string();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("json round trip is byte identical") {
    std::vector<Document> docs(3);
    docs[0].rep = build_generic_rep(TopRow({4, 2, 1, 0}), QPoint::generic(0.37));
    docs[1].rep = build_flat_sl3(TopRow({4, 2, 0}), UnityOrder(3));
    docs[2].rep = build_atypical_sl3(TopRow({5, 2, 0}), UnityOrder(3));
    docs[2].report = {{"note", "x"}, {"values", {1.0 / 3.0, -2, 0.1}}};
    for (const auto& d : docs) {
      const std::string a = serialize(d);
      const Document back = parse_document(a);
      CHECK(serialize(back) == a);
      CHECK(back.rep.dim() == d.rep.dim());
      CHECK(back.rep.convention == d.rep.convention);
      CHECK(back.rep.q.value() == d.rep.q.value());
      for (std::size_t l = 0; l < d.rep.f.size(); ++l)
        for (std::size_t i = 0; i < d.rep.f[l].entries().size(); ++i)
          CHECK(back.rep.f[l].entries()[i].value == d.rep.f[l].entries()[i].value);
    }
  }

  TEST_CASE("schema fields") {
    Document d;
    d.rep = build_flat_sl3(TopRow({4, 2, 0}), UnityOrder(3));
    json j = to_json(d);
    CHECK(j["algebra"] == "sl(3)");
    CHECK(j["q"]["kind"] == "root");
    CHECK(j["q"]["m"] == 3);
    CHECK(j["convention"] == "flat_sl3");
    CHECK(j["basis"].size() == 8);
    CHECK(j["generators"].contains("e1"));
    CHECK(j["generators"].contains("f2"));
    CHECK(j["generators"]["k_exponents"]["k1"].size() == 8);
    Document g;
    g.rep = build_generic_rep(TopRow({3, 1, 0}), QPoint::generic(0.37));
    CHECK(to_json(g)["q"]["m"].is_null());
  }

  TEST_CASE("malformed input") {
    auto kind = [](const std::string& text) {
      try {
        parse_document(text);
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::InvalidArgument;
    };
    CHECK(kind("{") == ErrorKind::Format);
    CHECK(kind("{}") == ErrorKind::Format);
    Document d;
    d.rep = build_generic_rep(TopRow({3, 1, 0}), QPoint::generic(0.37));
    json j = to_json(d);
    j["generators"]["e1"].push_back({0, 99, 1.0, 0.0});
    CHECK(kind(j.dump()) == ErrorKind::Format);
    json k = to_json(d);
    k["convention"] = "mystery";
    CHECK(kind(k.dump()) == ErrorKind::Format);
  }

  TEST_CASE("csv export") {
    GeneratorSet g = build_flat_sl3(TopRow({4, 2, 0}), UnityOrder(3));
    std::string csv = to_csv(g);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "generator,row,col,re,im");
    int rows = 0, k_rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      if (line[0] == 'k') ++k_rows;
    }
    std::size_t nnz = 0;
    for (std::size_t l = 0; l < 2; ++l) nnz += g.e[l].nonzeros() + g.f[l].nonzeros();
    CHECK(rows == static_cast<int>(nnz) + 16);
    CHECK(k_rows == 16);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("dim and enumerate") {
    Run r = cli({"dim", "--top", "4,2,0"});
    CHECK(r.code == 0);
    CHECK(r.out == "8\n");
    CHECK(cli({"dim", "--top", "4,2", "--rank", "3"}).out == "8\n");
    Run e = cli({"enumerate", "--top", "4,2,0"});
    CHECK(e.code == 0);
    CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 8);
    Run w = cli({"enumerate", "--top", "4,2,0", "--weights"});
    CHECK(w.code == 0);
    CHECK(w.out.rfind("k1\tk2\tmult\n", 0) == 0);
  }

  TEST_CASE("config errors exit 2") {
    CHECK(cli({"build", "--top", "5,2,0", "--m", "4"}).code == 2);
    CHECK(cli({"build", "--top", "5,2,0", "--m", "3", "--convention", "flat"}).code == 2);
    CHECK(cli({"build", "--top", "3,1,0", "--m", "3", "--convention", "atypical"}).code == 2);
    CHECK(cli({"build", "--top", "5,x,0"}).code == 2);
    CHECK(cli({"build", "--top", "4,2,0", "--format", "xml"}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"paper-case", "flat-99"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
  }

  TEST_CASE("divergence exits 3") {
    Run r = cli({"build", "--top", "5,2,0", "--m", "3", "--convention", "generic"});
    CHECK(r.code == 3);
    CHECK(r.err.find("DivergentElement") != std::string::npos);
  }

  TEST_CASE("build, reimport, reserialize") {
    const std::string a = temp_path("a.json"), b = temp_path("b.json");
    for (const auto& args : std::vector<std::vector<std::string>>{{"--top", "5,2,0", "--m", "3"},
                                                                   {"--top", "4,2,0", "--m", "3"},
                                                                   {"--top", "4,2,1,0", "--generic-angle", "0.5"}}) {
      std::vector<std::string> build{"build", "--out", a};
      build.insert(build.end(), args.begin(), args.end());
      REQUIRE(cli(build).code == 0);
      REQUIRE(cli({"export", "--in", a, "--format", "json", "--out", b}).code == 0);
      CHECK(read_file(a) == read_file(b));
      Run v = cli({"verify", "--in", a});
      CHECK(v.code == 0);
    }
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }

  TEST_CASE("verification failure exits 1") {
    const std::string a = temp_path("bad.json");
    Document d;
    d.rep = build_generic_rep(TopRow({4, 2, 0}), QPoint::generic(0.37));
    json j = to_json(d);
    j["generators"]["f1"][0][2] = j["generators"]["f1"][0][2].get<double>() + 1e-3;
    write_file(a, j.dump());
    CHECK(cli({"verify", "--in", a}).code == 1);
    std::filesystem::remove(a);
  }

  TEST_CASE("tolerance precedence") {
    RunConfig c;
    ::unsetenv("GZROOTS_TOL");
    CHECK(effective_tolerance(c) == 1e-9);
    ::setenv("GZROOTS_TOL", "1e-6", 1);
    CHECK(effective_tolerance(c) == 1e-6);
    c.tol = 1e-3;
    CHECK(effective_tolerance(c) == 1e-3);
    c.tol.reset();
    ::setenv("GZROOTS_TOL", "abc", 1);
    CHECK_THROWS_AS(effective_tolerance(c), Error);
    CHECK(cli({"verify", "--top", "3,1,0"}).code == 2);
    ::unsetenv("GZROOTS_TOL");
  }

  TEST_CASE("top row parsing") {
    CHECK(parse_top("4,2,0", std::nullopt).values == std::vector<int>{4, 2, 0});
    CHECK(parse_top("4,2", 3).values == std::vector<int>{4, 2, 0});
    CHECK_THROWS_AS(parse_top("4", std::nullopt), Error);
    CHECK_THROWS_AS(parse_top("4,2", 5), Error);
    CHECK_THROWS_AS(parse_top("4,,2", std::nullopt), Error);
  }

  TEST_CASE("named scenarios") {
    for (const char* name : {"flat-7", "flat-18", "atypical-15"}) {
      Run r = cli({"paper-case", name});
      CHECK_MESSAGE(r.code == 0, r.out);
      CHECK(r.out.find("PASS") != std::string::npos);
    }
  }
}
