// Command-line front end. Shapes and maps travel as JSON documents on files or stdin/stdout.
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "pasting/braiding.hpp"
#include "pasting/codec.hpp"
#include "pasting/constructions.hpp"
#include "pasting/molecule.hpp"
#include "pasting/simplicial.hpp"

using namespace pasting;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string out_path;
std::string map_name;
bool stdin_used = false;

Json read_doc(const std::string& path)
{
    std::string text;
    if (path.empty() || path == "-") {
        if (stdin_used) throw UsageError("stdin can supply only one document");
        stdin_used = true;
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) fail(ErrorKind::ParseError, "cannot open " + path, path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what(), path);
    }
}

DocLoader loader()
{
    return [](const std::string& p) { return read_doc(p); };
}

Ogposet read_shape(const std::string& path)
{
    return decode_shape(read_doc(path));
}

OgpMap read_map(const std::string& path)
{
    return decode_map(read_doc(path), loader());
}

void write_text(const std::string& text)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + out_path, out_path);
    out << text;
}

void write_json(const Json& j)
{
    write_text(dump(j));
}

// Writes the shape, or the map selected with --map.
void write_bundle(const Ogposet& shape, const std::map<std::string, OgpMap>& maps)
{
    if (map_name.empty()) return write_json(encode_shape(shape));
    auto it = maps.find(map_name);
    if (it == maps.end()) {
        std::string known;
        for (const auto& [k, v] : maps) known += (known.empty() ? "" : ", ") + k;
        throw UsageError("no map named '" + map_name + "'; available: " + (known.empty() ? "none" : known));
    }
    write_json(encode_map(it->second));
}

Sign parse_side(const std::string& s)
{
    if (s == "-" || s == "l" || s == "minus") return Sign::minus;
    if (s == "+" || s == "r" || s == "plus") return Sign::plus;
    throw UsageError("side must be one of -, +");
}

std::vector<int> parse_dual(const std::string& spec, int max_dim)
{
    if (spec == "op") return dual_dims(DualKind::op, max_dim);
    if (spec == "co") return dual_dims(DualKind::co, max_dim);
    if (spec == "all") return dual_dims(DualKind::all, max_dim);
    std::vector<int> J;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            J.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("--j expects op, co, all or a comma-separated list of dimensions");
        }
    }
    return J;
}

Level parse_level(const std::string& s)
{
    if (s == "thin") return Level::thin;
    if (s == "directed") return Level::directed;
    if (s == "regular") return Level::regular;
    if (s == "molecule") return Level::molecule;
    if (s == "spherical") return Level::spherical;
    throw UsageError("unknown level " + s);
}

Json braiding_document()
{
    BraidingShapes b = braiding_shapes();
    Json shapes = Json::object(), maps = Json::object(), checks = Json::object();
    auto shape_entry = [&](const char* name, const Ogposet& P) {
        shapes[name] = encode_shape(P);
        ComplexCheck c = check_complex(P, Level::spherical);
        checks[name] = c.ok;
    };
    shape_entry("U1", b.u1);
    shape_entry("U2", b.u2);
    shape_entry("V1", b.v1);
    shape_entry("V2", b.v2);
    for (auto [name, f] : {std::pair<const char*, const OgpMap*>{"p1", &b.p1}, {"p2", &b.p2}, {"q1", &b.q1}, {"q2", &b.q2}}) {
        maps[name] = encode_map(*f);
        checks[name] = f->is_surjective();
    }
    return {{"shapes", shapes}, {"maps", maps}, {"checks", checks}};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Oriented graded posets, molecules and their constructions"};
    app.require_subcommand(1);
    app.add_option("-o,--output", out_path, "Output file (default stdout)");

    std::string in_a, in_b, in_c, kind, level = "regular", side = "both", dual_spec, rel, sub, unitor_side = "l";
    int n = 0, k = 0, limit = 40;
    bool granular = false, flip = false, expl = false, tilde = false, inclusions = false, reduced = false,
         on_boundary = false, chains = false;

    auto* gen = app.add_subcommand("gen", "Generate a standard shape");
    gen->add_option("kind", kind, "point, empty, globe, simplex, cube or comp_globe")->required();
    gen->add_option("n", n, "Dimension");
    gen->add_option("--map", map_name, "Emit a named map of the bundle instead");

    auto* validate = app.add_subcommand("validate", "Check a shape at a given level");
    validate->add_option("--level", level)->check(CLI::IsMember({"thin", "directed", "regular", "molecule", "spherical"}));
    validate->add_option("input", in_a);

    auto* boundary = app.add_subcommand("boundary", "Boundary of a shape");
    boundary->add_option("-n", n, "Boundary dimension")->required();
    boundary->add_option("-s", side, "-, + or both")->check(CLI::IsMember({"-", "+", "both"}));
    boundary->add_flag("--granular", granular, "List the granular boundary instead");
    boundary->add_option("input", in_a);

    auto* gray = app.add_subcommand("gray", "Lax Gray product");
    gray->add_option("A", in_a)->required();
    gray->add_option("B", in_b)->required();

    auto* join_cmd = app.add_subcommand("join", "Join");
    join_cmd->add_option("A", in_a)->required();
    join_cmd->add_option("B", in_b)->required();

    auto* dual_cmd = app.add_subcommand("dual", "Reverse orientations in chosen dimensions");
    dual_cmd->add_option("--j", dual_spec, "op, co, all or a list such as 1,3")->required();
    dual_cmd->add_option("input", in_a);

    auto* susp = app.add_subcommand("susp", "Suspension");
    susp->add_option("input", in_a);

    auto* paste_cmd = app.add_subcommand("paste", "Paste two molecules along a k-boundary");
    paste_cmd->add_option("A", in_a)->required();
    paste_cmd->add_option("B", in_b)->required();
    paste_cmd->add_option("-k", k)->required();
    paste_cmd->add_option("--map", map_name, "j1 or j2");

    auto* subst = app.add_subcommand("subst", "Substitute W for the submolecule V of U");
    subst->add_option("U", in_a)->required();
    subst->add_option("V", in_b, "Ids of V (list or shape document)")->required();
    subst->add_option("W", in_c)->required();
    subst->add_option("--map", map_name, "outer or inner");

    auto* cyl = app.add_subcommand("cyl", "Cylinder O(U), or U_C with --rel");
    cyl->add_option("--rel", rel, "Collapsed subset C of the boundary");
    cyl->add_option("input", in_a);
    cyl->add_option("--map", map_name, "q, p, iota_minus or iota_plus");

    auto* unitor = app.add_subcommand("unitor", "Unitor atom with its retraction");
    unitor->add_option("--side", unitor_side)->check(CLI::IsMember({"l", "r"}));
    unitor->add_flag("--flip", flip);
    unitor->add_option("--sub", sub, "Submolecule V of the boundary (default: the whole side)");
    unitor->add_option("input", in_a);
    unitor->add_option("--map", map_name, "retraction, in or out");

    auto* shell_cmd = app.add_subcommand("shell", "Shell of a spherical molecule");
    shell_cmd->add_option("input", in_a);
    shell_cmd->add_option("--map", map_name, "inclusion");

    auto* amap = app.add_subcommand("amap", "The surjection from the n-simplex onto the n-globe");
    amap->add_option("n", n)->required();
    amap->add_flag("--explicit", expl, "Use the word table instead of the recursion");

    auto* cmap = app.add_subcommand("cmap", "The surjection from the n-simplex onto the composition atom");
    cmap->add_option("n", n)->required();

    auto* extr_cmd = app.add_subcommand("extr", "Extraction molecules with their retractions");
    extr_cmd->add_option("k", k)->required();
    extr_cmd->add_option("n", n)->required();
    extr_cmd->add_flag("--tilde", tilde);
    extr_cmd->add_option("--map", map_name, "j or retraction");

    auto* horns_cmd = app.add_subcommand("horns", "Horns of an atom");
    horns_cmd->add_option("input", in_a);

    auto* maps_cmd = app.add_subcommand("maps", "Enumerate maps A -> B");
    maps_cmd->add_option("A", in_a)->required();
    maps_cmd->add_option("B", in_b)->required();
    maps_cmd->add_flag("--inclusions", inclusions);
    maps_cmd->add_option("--limit", limit, "Largest source size to search");

    auto* factor = app.add_subcommand("factor", "Image factorization of a map");
    factor->add_option("F", in_a);

    auto* pushout_cmd = app.add_subcommand("pushout", "Pushout of two inclusions with a common source");
    pushout_cmd->add_option("I1", in_a)->required();
    pushout_cmd->add_option("I2", in_b)->required();
    pushout_cmd->add_option("--map", map_name, "j1 or j2");

    auto* homology_cmd = app.add_subcommand("homology", "Integer homology of the nerve");
    homology_cmd->add_flag("--reduced", reduced);
    homology_cmd->add_flag("--boundary", on_boundary, "Use the boundary of the shape");
    homology_cmd->add_flag("--chains", chains, "Print the chains of the nerve instead");
    homology_cmd->add_option("input", in_a);

    auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic by elements and by chains");
    euler_cmd->add_flag("--boundary", on_boundary);
    euler_cmd->add_option("input", in_a);

    auto* dot = app.add_subcommand("dot", "Graphviz rendering of the Hasse diagram");
    dot->add_option("input", in_a);

    auto* demo = app.add_subcommand("demo", "Worked examples");
    demo->add_option("name", kind)->required()->check(CLI::IsMember({"braiding"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    auto whole_boundary = [](const Ogposet& P) { return bound_both(P, P.all(), P.dim() - 1); };

    try {
        if (*gen) {
            if (kind != "point" && kind != "empty" && gen->count("n") == 0) throw UsageError("gen needs a dimension");
            ShapeBundle b = generate(kind, n);
            write_bundle(b.shape, b.maps);
        } else if (*validate) {
            ComplexCheck c = check_complex(read_shape(in_a), parse_level(level));
            Json r = {{"ok", c.ok}, {"level", level}};
            if (!c.ok) r["reason"] = c.reason;
            write_json(r);
            if (!c.ok) {
                std::cerr << dump(Json{{"error", "ValidationError"}, {"message", c.reason}});
                return kExitValidation;
            }
        } else if (*boundary) {
            Ogposet P = read_shape(in_a);
            Side s = side == "-" ? Side::minus : side == "+" ? Side::plus : Side::both;
            ElementSet B = boundary_set(whole(P), n, s, granular);
            if (granular) write_json({{"elements", encode_subset(P, B)}});
            else write_json(encode_shape(restrict_to(P, B).poset));
        } else if (*gray) {
            write_json(encode_shape(gray_product(read_shape(in_a), read_shape(in_b))));
        } else if (*join_cmd) {
            write_json(encode_shape(join(read_shape(in_a), read_shape(in_b))));
        } else if (*dual_cmd) {
            Ogposet P = read_shape(in_a);
            write_json(encode_shape(dual(P, parse_dual(dual_spec, P.dim()))));
        } else if (*susp) {
            write_json(encode_shape(suspension(read_shape(in_a))));
        } else if (*paste_cmd) {
            Pasting p = paste(read_shape(in_a), read_shape(in_b), k);
            write_bundle(p.poset, {{"j1", p.j1}, {"j2", p.j2}});
        } else if (*subst) {
            Ogposet U = read_shape(in_a);
            ElementSet V = decode_subset(U, read_doc(in_b));
            Substitution s = substitution(U, V, read_shape(in_c));
            write_bundle(s.shape, {{"outer", s.outer}, {"inner", s.inner}});
        } else if (*cyl) {
            Ogposet U = read_shape(in_a);
            ElementSet C = rel.empty() ? whole_boundary(U) : decode_subset(U, read_doc(rel));
            ShapeBundle b = relative_cylinder(U, C);
            write_bundle(b.shape, b.maps);
        } else if (*unitor) {
            Ogposet U = read_shape(in_a);
            Sign s = parse_side(unitor_side);
            ElementSet V = sub.empty() ? bound(U, U.all(), U.dim() - 1, s) : decode_subset(U, read_doc(sub));
            ShapeBundle b = unitor_atom(U, V, s, flip);
            write_bundle(b.shape, b.maps);
        } else if (*shell_cmd) {
            Shell s = shell(read_shape(in_a));
            write_bundle(s.shape, {{"inclusion", s.inclusion}});
        } else if (*amap) {
            write_json(encode_map(a_map(n, expl)));
        } else if (*cmap) {
            write_json(encode_map(c_map(n)));
        } else if (*extr_cmd) {
            ShapeBundle b = extr(k, n, tilde);
            write_bundle(b.shape, b.maps);
        } else if (*horns_cmd) {
            Ogposet W = read_shape(in_a);
            Json list = Json::array();
            for (const Horn& h : horns(W)) {
                Json j = {{"removed", W.name(h.removed)}, {"kind", horn_kind_name(h.kind)},
                          {"lambda", encode_subset(W, h.lambda)}};
                if (h.ternary)
                    j["ternary"] = {{"W0", W.name((*h.ternary)[0])},
                                    {"W+", W.name((*h.ternary)[1])},
                                    {"W-", W.name((*h.ternary)[2])}};
                list.push_back(j);
            }
            write_json(list);
        } else if (*maps_cmd) {
            Ogposet A = read_shape(in_a), B = read_shape(in_b);
            Json list = Json::array();
            for (const OgpMap& f : enumerate_maps(A, B, inclusions, limit)) list.push_back(encode_map(f)["assignment"]);
            write_json({{"count", list.size()}, {"assignments", list}});
        } else if (*factor) {
            Factorization f = image_factorization(read_map(in_a));
            write_json({{"surjection", encode_map(f.surjection)}, {"inclusion", encode_map(f.inclusion)}});
        } else if (*pushout_cmd) {
            Pushout p = pushout_inclusions(read_map(in_a), read_map(in_b));
            write_bundle(p.poset, {{"j1", p.j1}, {"j2", p.j2}});
        } else if (*homology_cmd) {
            Ogposet P = read_shape(in_a);
            OrderedComplex C = on_boundary ? nerve(P, whole_boundary(P)) : nerve(P);
            if (chains) write_json(encode_complex(P, C));
            else write_text(homology(C, reduced).str());
        } else if (*euler_cmd) {
            Ogposet P = read_shape(in_a);
            EulerPair e = on_boundary ? euler(P, whole_boundary(P)) : euler(P);
            write_json({{"by_elements", e.by_elements}, {"by_chains", e.by_chains}});
        } else if (*dot) {
            write_text(to_dot(read_shape(in_a)));
        } else if (*demo) {
            write_json(braiding_document());
        }
    } catch (const UsageError& e) {
        std::cerr << dump(Json{{"error", "UsageError"}, {"message", e.what()}});
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << dump(error_object(e));
        return e.kind() == ErrorKind::Internal ? kExitInternal : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << dump(Json{{"error", "Internal"}, {"message", e.what()}});
        return kExitInternal;
    }
    return 0;
}
