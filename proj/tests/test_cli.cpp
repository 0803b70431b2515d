#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "oracles.hpp"
#include "pasting/braiding.hpp"
#include "pasting/codec.hpp"
#include "pasting/constructions.hpp"
#include "pasting/simplicial.hpp"

using namespace pasting;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Internal;
}

std::string error_message(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

struct Scratch {
    fs::path dir;
    Scratch()
    {
        dir = fs::temp_directory_path() / ("pasting_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
    std::string read(const std::string& name) const
    {
        std::ifstream in(dir / name);
        return {std::istreambuf_iterator<char>(in), {}};
    }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const Scratch& s, const std::string& args, const std::string& stdin_text = "")
{
    const std::string in = s.write("stdin.txt", stdin_text);
    const std::string err = (s.dir / "stderr.txt").string();
    const std::string cmd = std::string("'") + PASTING_CLI + "' " + args + " < '" + in + "' 2> '" + err + "'";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, s.read("stderr.txt")};
}

std::string shape_text(const Ogposet& P)
{
    return dump(encode_shape(P));
}

const char* kGlobe1Doc = R"({"elements":[{"id":"a","dim":0},{"id":"b","dim":0},{"id":"e","dim":1}],
  "covers":[{"u":"e","l":"a","sign":"-"},{"u":"e","l":"b","sign":"%s"}]})";

std::string globe1_with_sign(const std::string& sign)
{
    std::string doc = kGlobe1Doc;
    doc.replace(doc.find("%s"), 2, sign);
    return doc;
}

}  // namespace

TEST_CASE("codec round trip up to canonical order")
{
    for (const auto& f : oracle::molecule_fixtures()) {
        INFO(f.name);
        const Json doc = encode_shape(f.shape);
        const Ogposet back = decode_shape(doc);
        CHECK(back == canonicalize(f.shape));
        CHECK(dump(encode_shape(back)) == dump(doc));
        CHECK(dump(encode_shape(decode_shape(Json::parse(dump(doc))))) == dump(doc));
    }
    CHECK(encode_shape(globe(1))["format_version"] == "1");
}

TEST_CASE("decoding keeps document order within a dimension")
{
    Json doc = Json::parse(globe1_with_sign("+"));
    std::swap(doc["elements"][0], doc["elements"][1]);
    Ogposet P = decode_shape(doc);
    CHECK(P.name(0) == "b");
    CHECK(P.name(1) == "a");
    CHECK(P.dim(2) == 1);
    CHECK(decode_shape(Json::parse(globe1_with_sign("+"))).name(0) == "a");
}

TEST_CASE("decoding errors")
{
    CHECK(kind_of([] { decode_shape(Json::parse(globe1_with_sign("±"))); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { decode_shape(Json::parse(R"({"covers":[]})")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { decode_shape(Json::parse(R"([1,2])")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              decode_shape(Json::parse(R"({"format_version":"9","elements":[],"covers":[]})"));
          }) == ErrorKind::ParseError);

    const char* dup = R"({"elements":[{"id":"a"},{"id":"a"}],"covers":[]})";
    CHECK(kind_of([&] { decode_shape(Json::parse(dup)); }) == ErrorKind::ValidationError);

    const char* transitive = R"({"elements":[{"id":"a"},{"id":"b"},{"id":"c"},{"id":"d"}],
      "covers":[{"u":"b","l":"a","sign":"+"},{"u":"c","l":"b","sign":"+"},{"u":"d","l":"c","sign":"+"},
                {"u":"d","l":"b","sign":"+"}]})";
    CHECK(kind_of([&] { decode_shape(Json::parse(transitive)); }) == ErrorKind::ValidationError);
    CHECK(error_message([&] { decode_shape(Json::parse(transitive)); }).rfind("TransitiveEdge:", 0) == 0);

    const char* unknown = R"({"elements":[{"id":"a"}],"covers":[{"u":"a","l":"z","sign":"+"}]})";
    CHECK(kind_of([&] { decode_shape(Json::parse(unknown)); }) == ErrorKind::ValidationError);
}

TEST_CASE("maps and subsets")
{
    OgpMap a = a_map(3, true);
    const Json doc = encode_map(a);
    OgpMap back = decode_map(doc);
    CHECK(back.source() == canonicalize(a.source()));
    for (int x = 0; x < a.source().size(); ++x)
        CHECK(back.target().name(back(*back.source().find(a.source().name(x)))) == a.target().name(a(x)));

    Json by_path = doc;
    by_path["source"] = "src.json";
    OgpMap loaded = decode_map(by_path, [&](const std::string& p) {
        CHECK(p == "src.json");
        return encode_shape(simplex(3));
    });
    CHECK(loaded.assignment() == back.assignment());
    CHECK(kind_of([&] { decode_map(by_path); }) == ErrorKind::ParseError);

    Json not_map = doc;
    not_map["assignment"][0][1] = "2";
    CHECK(kind_of([&] { decode_map(not_map); }) == ErrorKind::ValidationError);

    Ogposet O2 = globe(2);
    ElementSet S = decode_subset(O2, Json::parse(R"(["1-"])"));
    CHECK(S.count() == 3);
    CHECK(encode_subset(O2, S) == Json::parse(R"(["0+","0-","1-"])"));
    CHECK(decode_subset(O2, encode_shape(restrict_to(O2, S).poset)) == S);
    CHECK(kind_of([&] { decode_subset(O2, Json::parse(R"(["7"])")); }) == ErrorKind::ValidationError);
}

TEST_CASE("dot rendering")
{
    Ogposet P = simplex(2);
    std::string dot = to_dot(P);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("rankdir=BT") != std::string::npos);
    std::size_t edges = 0;
    for (std::size_t at = dot.find(" -> "); at != std::string::npos; at = dot.find(" -> ", at + 1)) ++edges;
    CHECK(edges == P.num_covers());
    CHECK(dot.find("color=magenta") != std::string::npos);
}

TEST_CASE("cli: generators and validation")
{
    Scratch s;
    Run g = run(s, "gen globe 2");
    CHECK(g.code == 0);
    CHECK(g.out == shape_text(globe(2)));
    CHECK(run(s, "gen simplex 3").out == shape_text(simplex(3)));
    CHECK(run(s, "gen point").out == shape_text(point()));

    Run v = run(s, "validate --level regular", g.out);
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out)["ok"] == true);

    Run m = run(s, "gen comp_globe 3 --map p1");
    CHECK(m.code == 0);
    CHECK(Json::parse(m.out)["assignment"].size() == 9);

    auto cov = cover_list(globe(2));
    cov[0].sign = -cov[0].sign;
    Run bad = run(s, "validate --level thin", shape_text(with_signs(globe(2), cov)));
    CHECK(bad.code == 1);
    CHECK(Json::parse(bad.err)["error"] == "ValidationError");
}

TEST_CASE("cli: constructions match the library")
{
    Scratch s;
    const std::string o1 = s.write("o1.json", shape_text(globe(1)));
    const std::string d2 = s.write("d2.json", shape_text(simplex(2)));
    const std::string p2 = s.write("p2.json", shape_text(oracle::path2()));

    CHECK(run(s, "gray " + o1 + " " + d2).out == shape_text(gray_product(globe(1), simplex(2))));
    CHECK(run(s, "join " + o1 + " " + o1).out == shape_text(join(globe(1), globe(1))));
    CHECK(run(s, "susp " + d2).out == shape_text(suspension(simplex(2))));
    CHECK(run(s, "dual --j op " + d2).out == shape_text(dual(simplex(2), DualKind::op)));
    CHECK(run(s, "dual --j 2 " + d2).out == shape_text(dual(simplex(2), std::vector<int>{2})));
    CHECK(run(s, "paste " + o1 + " " + o1 + " -k 0").out == shape_text(oracle::path2()));
    CHECK(run(s, "cyl " + d2).out == shape_text(cylinder(simplex(2)).shape));
    CHECK(run(s, "shell " + d2).out == shape_text(shell(simplex(2)).shape));
    CHECK(run(s, "amap 3").out == dump(encode_map(a_map(3, false))));
    CHECK(run(s, "amap 3 --explicit").out == dump(encode_map(a_map(3, true))));
    CHECK(run(s, "cmap 2").out == dump(encode_map(c_map(2))));
    CHECK(run(s, "extr 0 2 --map retraction").out == dump(encode_map(extr(0, 2, false).map("retraction"))));

    Run b = run(s, "boundary -n 1 -s - --granular " + d2);
    CHECK(Json::parse(b.out)["elements"] == Json::parse(R"(["⊤⊥⊤"])"));
    CHECK(run(s, "boundary -n 0 -s + " + o1).out == shape_text(restrict_to(globe(1), bound(globe(1), globe(1).all(), 0, Sign::plus)).poset));

    Run mp = run(s, "maps " + s.write("d1.json", shape_text(simplex(1))) + " " + d2);
    CHECK(Json::parse(mp.out)["count"] == 6);
    CHECK(Json::parse(run(s, "maps --inclusions " + o1 + " " + p2).out)["count"] == 2);

    Json hs = Json::parse(run(s, "horns " + d2).out);
    CHECK(hs.size() == 3);
    CHECK(hs[0].contains("ternary"));

    const std::string sub = s.write("v.json", R"(["0-"])");
    Run u = run(s, "unitor --side l --sub " + sub + " " + o1);
    CHECK(u.code == 0);
    CHECK(find_iso(decode_shape(Json::parse(u.out)), comp_globe(2).shape).has_value());
}

TEST_CASE("cli: maps, factorizations and pushouts")
{
    Scratch s;
    const std::string deg = s.write("s.json", dump(encode_map(codegeneracy(0, 1))));
    Json fz = Json::parse(run(s, "factor " + deg).out);
    CHECK(fz["surjection"]["assignment"].size() == 7);

    Ogposet O1 = globe(1);
    const std::string e = s.write("e.json", dump(encode_map(check_map(point(), O1, {O1.index_of("0+")}))));
    const std::string b = s.write("b.json", dump(encode_map(check_map(point(), O1, {O1.index_of("0-")}))));
    Run po = run(s, "pushout " + e + " " + b);
    CHECK(po.code == 0);
    CHECK(find_iso(decode_shape(Json::parse(po.out)), oracle::path2()).has_value());
}

TEST_CASE("cli: topology")
{
    Scratch s;
    const std::string d3 = s.write("d3.json", shape_text(simplex(3)));
    Run h = run(s, "homology --reduced --boundary " + d3);
    CHECK(h.code == 0);
    CHECK(h.out == homology(nerve(simplex(3), bound_both(simplex(3), simplex(3).all(), 2)), true).str());
    CHECK(h.out.find("H_2 = Z") != std::string::npos);

    Json e = Json::parse(run(s, "euler " + d3).out);
    CHECK(e["by_elements"] == 1);
    CHECK(e["by_chains"] == 1);

    Json c = Json::parse(run(s, "homology --chains " + s.write("o1.json", shape_text(globe(1)))).out);
    CHECK(c["chains"][0].size() == 3);
    CHECK(c["chains"][1].size() == 2);

    Run d = run(s, "dot " + d3);
    CHECK(d.out == to_dot(simplex(3)));
}

TEST_CASE("cli: output file and braiding demo")
{
    Scratch s;
    const std::string out = (s.dir / "g.json").string();
    Run r = run(s, "-o " + out + " gen cube 2");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(s.read("g.json") == shape_text(cube(2)));

    Json demo = Json::parse(run(s, "demo braiding").out);
    for (const char* k : {"U1", "U2", "V1", "V2", "p1", "p2", "q1", "q2"}) CHECK(demo["checks"][k] == true);
    CHECK(demo["shapes"]["V1"]["elements"].size() == 13);
}

TEST_CASE("cli: exit codes and error objects")
{
    Scratch s;
    Run sign = run(s, "validate --level thin", globe1_with_sign("±"));
    CHECK(sign.code == 1);
    CHECK(Json::parse(sign.err)["error"] == "ParseError");

    Run junk = run(s, "susp", "{not json");
    CHECK(junk.code == 1);
    CHECK(Json::parse(junk.err)["error"] == "ParseError");

    CHECK(run(s, "gen torus 2").code == 1);
    CHECK(run(s, "gen globe").code == 2);
    CHECK(run(s, "paste a.json").code == 2);
    CHECK(run(s, "frobnicate").code == 2);
    CHECK(run(s, "gray - -", shape_text(globe(1))).code == 2);

    Run mismatch = run(s, "paste " + s.write("o2.json", shape_text(globe(2))) + " " +
                              s.write("p.json", shape_text(oracle::path2())) + " -k 1");
    CHECK(mismatch.code == 1);
    CHECK(Json::parse(mismatch.err)["error"] == "BoundaryMismatch");

    Run nomap = run(s, "gen globe 2 --map nothing");
    CHECK(nomap.code == 2);
}
