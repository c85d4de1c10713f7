// Command-line front end: exact Coxeter/Hecke/Kazhdan-Lusztig data, light
// and double leaves, cellular structure reports, and the monotonicity
// scanner.  All output is deterministic for a fixed set of flags.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "soergel/cellular.hpp"
#include "soergel/errors.hpp"
#include "soergel/mono.hpp"

using ojson = nlohmann::ordered_json;
using namespace soergel;

namespace {

constexpr const char* kLetters = "stuabcdefgh";

struct Common {
    std::string group = "A2";
    unsigned seed = 0;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--group", c.group,
                    "Group preset (A2, A3, B2, B3, G2, H3, I2(m), Dinf) or a "
                    "path to a Coxeter-matrix JSON file");
    cmd->add_option("--ledger-seed", c.seed, "Choice-ledger seed (0 = default)");
    cmd->add_option("--format", c.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", c.out, "Write the report to this path instead of stdout");
}

CoxeterMatrix load_group(const std::string& spec) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        std::ifstream in(spec);
        if (!in) throw CLI::ValidationError("--group", "cannot open " + spec);
        std::stringstream ss;
        ss << in.rdbuf();
        return CoxeterMatrix::from_json_text(ss.str());
    }
    return CoxeterMatrix::preset(spec);
}

Word parse_word(const std::string& text, int rank) {
    Word w;
    for (char ch : text) {
        int idx = -1;
        if (ch >= '0' && ch <= '9') {
            idx = ch - '0';
        } else {
            for (int i = 0; kLetters[i]; ++i)
                if (kLetters[i] == ch) idx = i;
        }
        if (idx < 0 || idx >= rank)
            throw CLI::ValidationError("word",
                                       std::string("letter '") + ch +
                                           "' is not a generator of this group");
        w.push_back(idx);
    }
    return w;
}

int env_threads() {
    const char* e = std::getenv("SOERGEL_THREADS");
    if (!e) return 1;
    int n = std::atoi(e);
    return n > 0 ? n : 1;
}

void emit(const Common& c, const ojson& j, const std::string& csv) {
    std::string text = c.format == "json" ? j.dump(2) + "\n" : csv;
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.out);
        out << text;
    }
}

// Everything each subcommand needs, built once per run.
struct Session {
    CoxeterSystem sys;
    GroupUniverse uni;
    RingContext ctx;
    ChoiceLedger led;
    MorphismFactory fac;
    KLTable kl;

    Session(const Common& c, int max_len)
        : sys(load_group(c.group)),
          uni(sys, max_len),
          ctx(sys),
          led(uni, c.seed),
          fac(ctx, led),
          kl(uni) {}
};

std::string poly_str(const Session& s, const Poly& p) { return p.str(s.sys.rank()); }

ojson matrix_json(const Session& s, const MorphismMatrix& m) {
    ojson entries = ojson::array();
    for (int j = 0; j < m.src_rank(); ++j)
        for (auto& [i, p] : m.cols[j])
            entries.push_back({{"row", i}, {"col", j}, {"value", poly_str(s, p)}});
    return {{"src", word_str(m.src)},
            {"tgt", word_str(m.tgt)},
            {"degree", m.degree},
            {"entries", entries}};
}

int run_kl(const Common& c, const std::string& w_text) {
    Session s(c, int(w_text.size()));
    Word w = parse_word(w_text, s.sys.rank());
    ElementId wid = s.uni.product_id(w);
    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "x,length,h,P\n";
    for (ElementId x : s.uni.bruhat_interval_below(wid)) {
        std::string xs = word_str(s.uni.canonical_word(x));
        std::string h = s.kl.kl_poly(x, wid).str();
        std::string p = qpoly_str(s.kl.kl_poly_P(x, wid));
        rows.push_back(
            {{"x", xs}, {"length", s.uni.length(x)}, {"h", h}, {"P", p}});
        csv << xs << "," << s.uni.length(x) << "," << h << "," << p << "\n";
    }
    emit(c,
         {{"command", "kl"},
          {"group", c.group},
          {"w", word_str(s.uni.canonical_word(wid))},
          {"rows", rows}},
         csv.str());
    return 0;
}

int run_bruhat(const Common& c, const std::string& w_text) {
    Session s(c, int(w_text.size()));
    Word w = parse_word(w_text, s.sys.rank());
    ElementId wid = s.uni.product_id(w);
    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "x,length,reduced_expressions\n";
    for (ElementId x : s.uni.bruhat_interval_below(wid)) {
        std::string xs = word_str(s.uni.canonical_word(x));
        std::size_t nrex = s.uni.reduced_expressions(x).size();
        rows.push_back(
            {{"x", xs}, {"length", s.uni.length(x)}, {"reduced_expressions", nrex}});
        csv << xs << "," << s.uni.length(x) << "," << nrex << "\n";
    }
    emit(c,
         {{"command", "bruhat"},
          {"group", c.group},
          {"w", word_str(s.uni.canonical_word(wid))},
          {"rows", rows}},
         csv.str());
    return 0;
}

int run_leaves(const Common& c, const std::string& w_text, bool with_matrices) {
    Session s(c, int(w_text.size()));
    Word w = parse_word(w_text, s.sys.rank());
    LeafTree tree = build_tree(s.led, w);
    std::map<ElementId, LaurentPoly> chars = leaf_character(s.led, w);

    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "target,length,count,character\n";
    for (auto& [x, ch] : chars) {
        int count = 0;
        ojson degrees = ojson::array();
        for (const Leaf& l : tree.leaves)
            if (l.target == x) {
                ++count;
                degrees.push_back(l.degree);
            }
        std::string xs = word_str(s.uni.canonical_word(x));
        rows.push_back({{"target", xs},
                        {"length", s.uni.length(x)},
                        {"count", count},
                        {"degrees", degrees},
                        {"character", ch.str()}});
        csv << xs << "," << s.uni.length(x) << "," << count << "," << ch.str() << "\n";
    }
    ojson report{{"command", "leaves"},
                 {"group", c.group},
                 {"word", word_str(w)},
                 {"rows", rows}};
    if (with_matrices) {
        ojson mats = ojson::array();
        for (const Leaf& l : tree.leaves) {
            ojson iseq(l.i_seq), jseq(l.j_seq);
            mats.push_back({{"i_seq", iseq},
                            {"j_seq", jseq},
                            {"target", word_str(s.uni.canonical_word(l.target))},
                            {"degree", l.degree},
                            {"matrix", matrix_json(s, s.fac.matrix(l))}});
        }
        report["leaves"] = mats;
    }
    emit(c, report, csv.str());
    return 0;
}

int run_gram(const Common& c, const std::string& w_text) {
    Session s(c, int(w_text.size()));
    Word w = parse_word(w_text, s.sys.rank());
    CellularContext cc(s.fac, w);
    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "x,length,gd_cell,gd_simple\n";
    for (ElementId x : cc.strata()) {
        const auto& g = cc.gram(x);
        ojson gj = ojson::array();
        for (auto& row : g) {
            ojson rj = ojson::array();
            for (auto& v : row) rj.push_back(v.str());
            gj.push_back(rj);
        }
        std::string xs = word_str(s.uni.canonical_word(x));
        rows.push_back({{"x", xs},
                        {"length", s.uni.length(x)},
                        {"gd_cell", cc.gd_cell(x).str()},
                        {"gd_simple", cc.gd_simple(x).str()},
                        {"gram", gj}});
        csv << xs << "," << s.uni.length(x) << "," << cc.gd_cell(x).str() << ","
            << cc.gd_simple(x).str() << "\n";
    }
    emit(c,
         {{"command", "gram"},
          {"group", c.group},
          {"w", word_str(w)},
          {"dim", cc.dim()},
          {"rows", rows}},
         csv.str());
    return 0;
}

int run_decomp(const Common& c, const std::string& w_text) {
    Session s(c, int(w_text.size()));
    Word w = parse_word(w_text, s.sys.rank());
    CellularContext cc(s.fac, w);
    // Triggers the gd_simple / multiplicity cross-validation.
    cc.decomposition_number(cc.top(), s.kl);
    std::map<ElementId, LaurentPoly> m = cc.solve_multiplicities(s.kl);
    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "y,length,multiplicity,d\n";
    for (ElementId y : cc.strata()) {
        std::string ys = word_str(s.uni.canonical_word(y));
        std::string d = s.kl.kl_poly(y, cc.top()).str();
        rows.push_back({{"y", ys},
                        {"length", s.uni.length(y)},
                        {"multiplicity", m.at(y).str()},
                        {"d", d}});
        csv << ys << "," << s.uni.length(y) << "," << m.at(y).str() << "," << d << "\n";
    }
    emit(c,
         {{"command", "decomp"},
          {"group", c.group},
          {"w", word_str(w)},
          {"rows", rows}},
         csv.str());
    return 0;
}

int run_expand(const Common& c, const std::string& w_text, const std::string& mult) {
    Session s(c, int(w_text.size()));
    Word w = parse_word(w_text, s.sys.rank());
    MorphismMatrix target = MorphismMatrix::identity(w);
    if (!mult.empty()) {
        Word g = parse_word(mult, s.sys.rank());
        if (g.size() != 1)
            throw CLI::ValidationError("--left-mult", "expects a single generator");
        target = left_mult_operator(s.ctx, w, Poly::variable(g[0]));
    }
    DoubleLeafExpander exp(s.ctx, double_leaves(s.fac, w, w));
    std::vector<Poly> r = exp.expand(target);
    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "index,through,degree,coefficient\n";
    for (std::size_t k = 0; k < r.size(); ++k) {
        const DoubleLeaf& d = exp.basis().basis[k];
        std::string th = word_str(s.uni.canonical_word(d.through));
        rows.push_back({{"index", k},
                        {"through", th},
                        {"degree", d.degree},
                        {"coefficient", poly_str(s, r[k])}});
        csv << k << "," << th << "," << d.degree << "," << poly_str(s, r[k]) << "\n";
    }
    emit(c,
         {{"command", "expand"},
          {"group", c.group},
          {"w", word_str(w)},
          {"morphism", mult.empty() ? "identity" : "left-mult x_" + mult},
          {"rows", rows}},
         csv.str());
    return 0;
}

int run_mono(const Common& c, int max_len, const std::string& mode, int phi_budget) {
    Session s(c, max_len);
    MonoReport rep = monotonicity_scan(s.uni, s.kl, max_len, env_threads());
    long long phi_certified = 0;

    if (mode == "full-phi") {
        for (ElementId wid = 0; wid < ElementId(s.uni.size()); ++wid) {
            if (s.uni.length(wid) > phi_budget) continue;
            CellularContext cc(s.fac, s.led.canonical_word(wid));
            for (ElementId u : cc.strata())
                for (ElementId v : cc.strata()) {
                    if (!s.uni.bruhat_leq(u, v)) continue;
                    PhiCertificate cert = certify_phi(cc, u, v);
                    if (cert.ok())
                        ++phi_certified;
                    else
                        rep.violations.push_back(
                            {u, v, wid, "phi", "certificate failed"});
                }
        }
    }

    ojson viols = ojson::array();
    for (auto& v : rep.violations)
        viols.push_back({{"u", word_str(s.uni.canonical_word(v.u))},
                         {"v", word_str(s.uni.canonical_word(v.v))},
                         {"w", word_str(s.uni.canonical_word(v.w))},
                         {"form", v.form},
                         {"detail", v.detail}});
    std::ostringstream csv;
    csv << "triples_checked,phi_certified,violations\n"
        << rep.triples_checked << "," << phi_certified << "," << rep.violations.size()
        << "\n";
    emit(c,
         {{"command", "mono"},
          {"group", c.group},
          {"max_length", max_len},
          {"mode", mode},
          {"triples_checked", rep.triples_checked},
          {"phi_certified", phi_certified},
          {"violations", viols}},
         csv.str());
    return rep.violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact light-leaves calculus, cellular structure, and "
                 "Kazhdan-Lusztig monotonicity checks"};
    app.require_subcommand(1);

    Common c_kl, c_bruhat, c_leaves, c_gram, c_decomp, c_expand, c_mono;
    std::string w_kl, w_bruhat, w_leaves, w_gram, w_decomp, w_expand, left_mult;
    bool with_matrices = false;
    int mono_len = 6, phi_budget = 3;
    std::string mono_mode = "kl-only";

    CLI::App* kl = app.add_subcommand("kl", "KL polynomials h and P below a word");
    add_common(kl, c_kl);
    kl->add_option("--w", w_kl, "Word for w")->required();

    CLI::App* bruhat = app.add_subcommand("bruhat", "Bruhat interval below a word");
    add_common(bruhat, c_bruhat);
    bruhat->add_option("--w", w_bruhat, "Word for w")->required();

    CLI::App* leaves =
        app.add_subcommand("leaves", "Light-leaves tree of a word (need not be reduced)");
    add_common(leaves, c_leaves);
    leaves->add_option("--word", w_leaves, "Expression word")->required();
    leaves->add_flag("--matrices", with_matrices, "Include full morphism matrices");

    CLI::App* gram = app.add_subcommand("gram", "Gram forms and graded dimensions");
    add_common(gram, c_gram);
    gram->add_option("--w", w_gram, "Reduced word for w")->required();

    CLI::App* decomp =
        app.add_subcommand("decomp", "Multiplicities and decomposition numbers");
    add_common(decomp, c_decomp);
    decomp->add_option("--w", w_decomp, "Reduced word for w")->required();

    CLI::App* expand =
        app.add_subcommand("expand", "Expand an endomorphism over the double leaves");
    add_common(expand, c_expand);
    expand->add_option("--w", w_expand, "Reduced word for w")->required();
    expand->add_option("--left-mult", left_mult,
                       "Expand left multiplication by this generator's variable "
                       "(default: the identity morphism)");

    CLI::App* mono = app.add_subcommand("mono", "Exhaustive KL monotonicity scan");
    add_common(mono, c_mono);
    mono->add_option("--max-length", mono_len, "Scan all w up to this length");
    mono->add_option("--mode", mono_mode, "kl-only or full-phi")
        ->check(CLI::IsMember({"kl-only", "full-phi"}));
    mono->add_option("--phi-length-budget", phi_budget,
                     "Certify Phi for all chains below words up to this length "
                     "(full-phi mode)");

    try {
        app.parse(argc, argv);
        if (kl->parsed()) return run_kl(c_kl, w_kl);
        if (bruhat->parsed()) return run_bruhat(c_bruhat, w_bruhat);
        if (leaves->parsed()) return run_leaves(c_leaves, w_leaves, with_matrices);
        if (gram->parsed()) return run_gram(c_gram, w_gram);
        if (decomp->parsed()) return run_decomp(c_decomp, w_decomp);
        if (expand->parsed()) return run_expand(c_expand, w_expand, left_mult);
        if (mono->parsed()) return run_mono(c_mono, mono_len, mono_mode, phi_budget);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
