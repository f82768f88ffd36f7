#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>

#include "holonomy/holonomy.hpp"

using namespace hol;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string rep, branch, group, data, save, emit, pattern, dir, batch_command = "classify";
    bool exact = false, realize = false, oracle = false, surjective = false;
    int cap = kDefaultCap;
    unsigned seed = 0;
    int degree = 0, n = 0, genus = -1, extra = -1;
};

struct Loaded {
    AnyRep rep;
    json raw;
};

Loaded load(const Options& o, const std::string& path)
{
    if (path.empty()) throw InputError("--rep is required");
    json raw = read_json_file(path);
    return {rep_from_json(raw, o.exact), raw};
}

BranchData branch_arg(const std::string& s, std::vector<std::string>& warnings)
{
    auto raw = BranchData::parse_list(s);
    BranchData bd(raw);
    if (!std::is_sorted(raw.begin(), raw.end())) warnings.push_back("branch data sorted to " + bd.str());
    return bd;
}

HolonomyProfile profile_of(const AnyRep& rep, int cap)
{
    return std::visit([&](const auto& r) { return profile(r, cap); }, rep);
}

template <class S>
json lattice_json(const SurfaceRep<Affine<S>>& rep)
{
    return to_json(lattice_of(rep));
}

json lattice_json(const SurfaceRep<MobiusF>& rep, const HolonomyProfile& p)
{
    if (!p.cls.fixed_point) throw DomainError("no common fixed point to move to infinity");
    return lattice_json(to_affine_rep(rep, *p.cls.fixed_point));
}

json lattice_output(const AnyRep& any, const HolonomyProfile& p)
{
    if (!p.cls.euclidean) throw DomainError("translation lattice needs a Euclidean representation");
    return std::visit(
        [&](const auto& r) -> json {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, SurfaceRep<AffineF>> || std::is_same_v<R, SurfaceRep<AffineQ>>) {
                return lattice_json(r);
            } else if constexpr (std::is_same_v<R, SurfaceRep<MobiusF>>) {
                return lattice_json(r, p);
            } else if constexpr (std::is_same_v<R, SurfaceRep<MobiusQ>>) {
                if (auto aff = exact_affine_rep(r)) return lattice_json(*aff);
                std::vector<MobiusF> im;
                for (auto& m : r.images()) im.push_back(to_float(m));
                return lattice_json(SurfaceRep<MobiusF>(r.genus(), im, TargetTag::psl2c()), p);
            } else {
                return lattice_json(to_mobius(r), p);
            }
        },
        any);
}

// Commands that take a single representation file.
CommandResult rep_command(const std::string& cmd, const Options& o, const std::string& path)
{
    CommandResult res;
    res.command = cmd;
    auto in = load(o, path);
    json args{{"exact", o.exact}, {"cap", o.cap}};
    BranchData bd;
    if (cmd == "decide") {
        bd = branch_arg(o.branch, res.warnings);
        args["branch"] = to_json(bd);
    }
    res.input_digest = digest(json{{"command", cmd}, {"args", args}, {"input", in.raw}}.dump());
    auto p = profile_of(in.rep, o.cap);
    for (auto& w : p.warnings) res.warnings.push_back(w);
    if (p.order_unverified) res.warnings.push_back("unverified: cap");
    if (cmd == "classify") {
        res.output = to_json(p);
    } else if (cmd == "decide") {
        res.output = to_json(decide_holonomy(p, bd));
    } else if (cmd == "mindeg") {
        res.output = to_json(minimal_degree(p));
    } else if (cmd == "volume") {
        if (!p.cls.euclidean || !p.euclid) throw DomainError("volume needs a Euclidean representation");
        const auto& e = *p.euclid;
        res.output = json{{"volume", e.volume}, {"sign", e.volume_sign}};
        if (e.volume_exact) res.output["exact"] = exact_string(*e.volume_exact);
    } else if (cmd == "lattice") {
        res.output = lattice_output(in.rep, p);
    } else {
        throw InputError("unknown command " + cmd);
    }
    return res;
}

CommandResult hurwitz_command(const Options& o)
{
    CommandResult res;
    res.command = "hurwitz";
    BranchData bd = branch_arg(o.data, res.warnings);
    res.input_digest = digest(json{{"command", res.command},
                                   {"degree", o.degree},
                                   {"data", to_json(bd)},
                                   {"realize", o.realize},
                                   {"oracle", o.oracle}}
                                  .dump());
    bool ok = realizable(o.degree, bd);
    res.output = json{{"degree", o.degree}, {"data", to_json(bd)}, {"realizable", ok}};
    if (o.realize && ok) {
        auto t = realize(o.degree, bd);
        res.output["tuple"] = to_json(t);
        res.output["genus"] = verify_cert(t).genus;
    }
    if (o.oracle) res.output["brute_force"] = brute_force_realizable(o.degree, bd);
    return res;
}

CommandResult orbits_command(const Options& o)
{
    CommandResult res;
    res.command = "orbits";
    res.input_digest =
        digest(json{{"command", res.command}, {"group", o.group}, {"genus", o.genus}, {"surjective", o.surjective}}.dump());
    auto G = FiniteGroup::parse(o.group);
    res.output = to_json(orbit_bfs(G, o.genus, o.surjective));
    if (!o.save.empty()) write_json_file(o.save, res.output);
    return res;
}

CommandResult construct_command(const Options& o)
{
    CommandResult res;
    res.command = "construct-cyclic";
    GluingPattern pat;
    if (!o.pattern.empty()) {
        json raw = read_json_file(o.pattern);
        res.input_digest = digest(json{{"command", res.command}, {"pattern", raw}}.dump());
        pat = gluing_pattern_from_json(raw);
    } else {
        if (o.n == 0 || o.genus < 0) throw InputError("construct-cyclic needs --n, --genus and --data, or --pattern");
        BranchData bd = branch_arg(o.data, res.warnings);
        int l = o.extra;
        if (l < 0) {
            if ((bd.total() - 2 * o.genus) % 2 != 0)
                throw DomainError("sum n_i = " + std::to_string(bd.total()) + " has the wrong parity for genus " +
                                  std::to_string(o.genus));
            l = (bd.total() - 2 * o.genus) / 2;
        }
        res.input_digest = digest(
            json{{"command", res.command}, {"n", o.n}, {"genus", o.genus}, {"extra", l}, {"data", to_json(bd)}}.dump());
        pat = build_cyclic_pattern(o.n, o.genus, l, bd);
    }
    auto surf = glue_and_analyze(pat);
    res.output = json{{"pattern", to_json(pat)}, {"surface", to_json(surf)}};
    if (!o.emit.empty()) write_json_file(o.emit, to_json(pat));
    return res;
}

int exit_code_of(const std::exception_ptr& e, std::string& msg)
{
    try {
        std::rethrow_exception(e);
    } catch (const InputError& err) {
        msg = err.what();
        return 2;
    } catch (const DomainError& err) {
        msg = err.what();
        return 1;
    } catch (const std::exception& err) {
        msg = err.what();
        return 1;
    }
}

// One result per file, in filename order.
int batch_command(const Options& o)
{
    static const std::vector<std::string> allowed{"classify", "decide", "mindeg", "volume", "lattice"};
    if (std::find(allowed.begin(), allowed.end(), o.batch_command) == allowed.end())
        throw InputError("batch runs classify, decide, mindeg, volume or lattice, not " + o.batch_command);
    if (!fs::is_directory(o.dir)) throw InputError("not a directory: " + o.dir);
    std::vector<fs::path> files;
    for (auto& entry : fs::directory_iterator(o.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    json out = json::array();
    int worst = 0;
    for (auto& f : files) {
        json entry;
        try {
            entry = to_json(rep_command(o.batch_command, o, f.string()));
        } catch (...) {
            std::string msg;
            int code = exit_code_of(std::current_exception(), msg);
            worst = std::max(worst, code);
            entry = json{{"command", o.batch_command}, {"error", msg}, {"exit", code}};
        }
        entry["file"] = f.filename().string();
        out.push_back(entry);
    }
    std::cout << out.dump(2) << '\n';
    return worst;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Holonomy of branched projective structures"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--exact", o.exact, "Parse scalars as exact rationals");
    app.add_option("--cap", o.cap, "Enumeration cap for finite-order searches")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for randomized work");

    std::map<std::string, CLI::App*> sub;
    for (auto name : {"classify", "decide", "mindeg", "volume", "lattice"}) {
        auto* s = app.add_subcommand(name);
        s->add_option("--rep", o.rep, "Representation JSON file")->required();
        if (std::string(name) == "decide") s->add_option("--branch", o.branch, "Comma-separated branch orders")->required();
        sub[name] = s;
    }
    auto* hz = app.add_subcommand("hurwitz", "Branched covers of the sphere with one-cycle branch data");
    hz->add_option("--degree", o.degree)->required();
    hz->add_option("--data", o.data, "Comma-separated branch orders")->required();
    hz->add_flag("--realize", o.realize, "Produce a permutation tuple");
    hz->add_flag("--oracle", o.oracle, "Also run the brute-force search");
    sub["hurwitz"] = hz;

    auto* ob = app.add_subcommand("orbits", "Mapping class group orbits of homomorphisms to a finite group");
    ob->add_option("--group", o.group, "Zn, Dn, A4, S4 or A5")->required();
    ob->add_option("--genus", o.genus)->required();
    ob->add_flag("--surjective", o.surjective, "Only surjective homomorphisms");
    ob->add_option("--save", o.save, "Write the summary to a file");
    sub["orbits"] = ob;

    auto* cc = app.add_subcommand("construct-cyclic", "Slit-and-glue construction with cyclic holonomy");
    cc->add_option("--n", o.n);
    cc->add_option("--genus", o.genus);
    cc->add_option("--extra", o.extra, "Extra handles l, default (sum - 2g) / 2");
    cc->add_option("--data", o.data, "Comma-separated cone orders");
    cc->add_option("--pattern", o.pattern, "Glue a saved pattern instead");
    cc->add_option("--emit", o.emit, "Write the gluing pattern to a file");
    sub["construct-cyclic"] = cc;

    auto* bt = app.add_subcommand("batch", "Run one command over every .json file in a directory");
    bt->add_option("dir", o.dir)->required();
    bt->add_option("--command", o.batch_command, "classify, decide, mindeg, volume or lattice");
    bt->add_option("--branch", o.branch, "Branch data for decide");
    sub["batch"] = bt;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bt->parsed()) {
            if (o.batch_command == "decide" && bt->count("--branch") == 0) throw InputError("batch decide needs --branch");
            return batch_command(o);
        }
        CommandResult res;
        if (hz->parsed()) res = hurwitz_command(o);
        else if (ob->parsed()) res = orbits_command(o);
        else if (cc->parsed()) res = construct_command(o);
        else {
            for (auto& [name, s] : sub)
                if (s->parsed()) res = rep_command(name, o, o.rep);
        }
        std::cout << to_json(res).dump(2) << '\n';
        return 0;
    } catch (...) {
        std::string msg;
        int code = exit_code_of(std::current_exception(), msg);
        std::cerr << "error: " << msg << '\n';
        return code;
    }
}
