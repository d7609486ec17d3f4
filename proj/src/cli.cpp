#include "kcoh/cli.hpp"

#include "kcoh/cubical.hpp"
#include "kcoh/diagnostics.hpp"
#include "kcoh/extensions.hpp"
#include "kcoh/groupoid.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>

namespace kcoh {

namespace {

std::string base_name(const std::string& path) {
    auto cut = path.find_last_of('/');
    return cut == std::string::npos ? path : path.substr(cut + 1);
}

std::shared_ptr<const KGraph> need_graph(const CliOptions& opt, ReportDocument& rep) {
    if (!opt.graph) throw ValidationError(opt.command + " needs --graph");
    Document d = load_document(*opt.graph);
    auto* gd = std::get_if<GraphDocument>(&d);
    if (!gd) throw ValidationError(*opt.graph + " is not a graph document");
    rep.inputs["graph"] = base_name(*opt.graph);
    return gd->build();
}

CocycleDocument need_phi(const CliOptions& opt, ReportDocument& rep, std::size_t i = 0) {
    if (opt.phi.size() <= i) throw ValidationError(opt.command + " needs --phi");
    Document d = load_document(opt.phi[i]);
    auto* cd = std::get_if<CocycleDocument>(&d);
    if (!cd) throw ValidationError(opt.phi[i] + " is not a cocycle document");
    rep.inputs[i == 0 ? "phi" : "phi2"] = base_name(opt.phi[i]);
    return *cd;
}

int need_upto(const CliOptions& opt, ReportDocument& rep) {
    if (opt.upto < 0) throw ValidationError("--upto must be nonnegative");
    rep.inputs["upto"] = std::to_string(opt.upto);
    return opt.upto;
}

int need_triples(const CliOptions& opt, ReportDocument& rep) {
    if (opt.triples < 1) throw ValidationError("--triples must be positive");
    rep.inputs["triples"] = std::to_string(opt.triples);
    return opt.triples;
}

void run_validate(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    rep.results["edges"] = std::to_string(g->edge_count());
    rep.results["k"] = std::to_string(g->rank());
    rep.results["squares"] = std::to_string(g->square_count());
    rep.results["vertices"] = std::to_string(g->vertex_count());
    rep.verdicts.push_back({"graph-valid", true, std::nullopt});
}

void run_homology(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    int upto = need_upto(opt, rep);
    for (int r = 0; r <= upto; ++r)
        rep.results["H" + std::to_string(r)] = homology(g, r).str();
}

void run_cohomology(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    int upto = need_upto(opt, rep);
    Group grp = Group::integers();
    if (opt.coeff) {
        auto parsed = Group::parse_name(*opt.coeff);
        if (!parsed) throw ValidationError("unknown coefficient group \"" + *opt.coeff + "\"");
        grp = *parsed;
    }
    rep.inputs["coeff"] = grp.name();
    for (int r = 0; r <= upto; ++r)
        rep.results["H" + std::to_string(r)] = cohomology(g, r, grp).str();
}

void run_cocycle_check(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    CocycleDocument cd = need_phi(opt, rep);
    rep.results["kind"] = cd.kind;
    if (cd.kind == "cubical2") {
        CubicalCochain phi = cubical2_cochain(cd, g);
        CocycleVerdict v = is_cub_2cocycle(phi);
        Verdict out{"cubical-2-cocycle", v.ok, std::nullopt};
        if (v.witness) out.witness = "3-cube " + v.witness->str();
        rep.verdicts.push_back(std::move(out));
    } else if (cd.kind == "cat-coboundary") {
        Cat2Cocycle c = document_cocycle(cd, g);
        TripleVerdict v = cat2_eval_and_check(c, 2, need_triples(opt, rep), 4, opt.seed);
        Verdict out{"categorical-2-cocycle", v.ok, std::nullopt};
        if (v.witness)
            out.witness = "triple " + (*v.witness)[0].str() + " ; " + (*v.witness)[1].str() +
                          " ; " + (*v.witness)[2].str();
        rep.verdicts.push_back(std::move(out));
    } else {
        CubicalCochain tab = edge_cochain(cd, g);
        CubicalCochain d1 = cub_coboundary(tab);
        Verdict out{"functor-multiplicative", d1.is_zero(), std::nullopt};
        if (!out.pass)
            for (int i = 0; i < CubeList::build(g, 2)->size(); ++i)
                if (!d1.group().is_zero(d1.value(i))) {
                    out.witness = "square " + square_id(*g, d1.cubes()->cube(i));
                    break;
                }
        rep.verdicts.push_back(std::move(out));
    }
}

void run_bridge_roundtrip(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    CocycleDocument cd = need_phi(opt, rep);
    CubicalCochain phi = cubical2_cochain(cd, g);
    CubicalCochain back = restrict_to_squares(c_phi(phi));
    rep.results["squares"] = std::to_string(phi.cubes()->size());
    Verdict out{"roundtrip-identity", back == phi, std::nullopt};
    if (!out.pass)
        for (int i = 0; i < phi.cubes()->size(); ++i)
            if (!(phi.value(i) == back.value(i))) {
                out.witness = "square " + square_id(*g, phi.cubes()->cube(i)) + ": " +
                              phi.group().str(phi.value(i)) + " came back as " +
                              back.group().str(back.value(i));
                break;
            }
    rep.verdicts.push_back(std::move(out));
}

void run_class_equal(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    CubicalCochain f1 = cubical2_cochain(need_phi(opt, rep), g);
    CubicalCochain f2 = opt.phi.size() > 1
                            ? cubical2_cochain(need_phi(opt, rep, 1), g)
                            : CubicalCochain(f1.cubes(), f1.group());
    if (!(f1.group() == f2.group()))
        throw ValidationError("class comparison needs one coefficient group on both sides");
    ClassCertificate cert = cub_class_equal(f1, f2);
    rep.results["squares"] = std::to_string(f1.cubes()->size());
    rep.verdicts.push_back({"class-equal", cert.equal, std::nullopt});
}

void run_ext_laws(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    std::vector<Cat2Cocycle> samples;
    for (std::size_t i = 0; i < opt.phi.size(); ++i)
        samples.push_back(document_cocycle(need_phi(opt, rep, i), g));
    if (samples.empty()) throw ValidationError("ext-laws needs --phi");
    ExtLawReport r = ext_law_suite(samples, need_triples(opt, rep), opt.seed);
    rep.results["samples"] = std::to_string(samples.size());
    rep.verdicts.push_back({"unit-law", r.unit_law, std::nullopt});
    rep.verdicts.push_back({"inverse-law", r.inverse_law, std::nullopt});
    rep.verdicts.push_back({"commutativity", r.commutativity, std::nullopt});
    rep.verdicts.push_back({"canonical-section", r.canonical_section, std::nullopt});
    rep.verdicts.push_back({"a-of-additivity", r.a_of_additivity, std::nullopt});
    rep.verdicts.push_back({"square-transfer", r.square_transfer, std::nullopt});
    if (r.failure)
        for (Verdict& v : rep.verdicts)
            if (!v.pass) {
                v.witness = r.failure;
                break;
            }
}

void run_sigma_check(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    Cat2Cocycle c = document_cocycle(need_phi(opt, rep), g);
    int triples = need_triples(opt, rep);
    PartitionP P(g);
    SigmaReport sr = sigma_identity_suite(c, P, triples, opt.seed);
    RefineReport rr = refine_compare(c, P, triples, opt.seed);
    rep.results["pairs-checked"] = std::to_string(rr.pairs_checked);
    rep.results["triples-checked"] = std::to_string(sr.triples_checked);
    rep.verdicts.push_back({"cocycle-identity", sr.cocycle_identity, std::nullopt});
    rep.verdicts.push_back({"coboundary-transfer", sr.coboundary_transfer, std::nullopt});
    rep.verdicts.push_back({"refinement-comparison", rr.matched, rr.failure});
    if (sr.failure)
        for (Verdict& v : rep.verdicts)
            if (!v.pass && !v.witness) {
                v.witness = sr.failure;
                break;
            }
}

void run_diagnostics(const CliOptions& opt, ReportDocument& rep) {
    auto g = need_graph(opt, rep);
    if (opt.bound < 0) throw ValidationError("--bound must be nonnegative");
    rep.inputs["bound"] = std::to_string(opt.bound);
    Degree b(g->rank());
    for (int i = 0; i < g->rank(); ++i) b[i] = opt.bound;
    PeriodicityReport pr = periodicity_diagnostics(g, b);
    CofinalityReport cr = cofinality_diagnostics(g, b);
    rep.results["pairs-checked"] = std::to_string(pr.pairs_checked);
    rep.results["paths-checked"] = std::to_string(cr.paths_checked);
    rep.results["periodicity"] = pr.verdict == PeriodicityVerdict::AperiodicUpToBound
                                     ? "aperiodic-up-to-bound"
                                 : pr.verdict == PeriodicityVerdict::PeriodicWitness
                                     ? "periodic-witness"
                                     : "inconclusive";
    Verdict per{"no-periodicity-witness",
                pr.verdict != PeriodicityVerdict::PeriodicWitness, std::nullopt};
    if (pr.witness) per.witness = pr.witness->first.str() + " vs " + pr.witness->second.str();
    rep.verdicts.push_back(std::move(per));
    Verdict cof{"cofinal-up-to-bound", cr.cofinal, std::nullopt};
    if (cr.witness)
        cof.witness = "vertex " + g->vertex_name(cr.witness->first) + " unreachable from " +
                      cr.witness->second.str();
    rep.verdicts.push_back(std::move(cof));
}

}  // namespace

bool ReportDocument::pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

ReportDocument run_command(const CliOptions& opt) {
    ReportDocument rep;
    rep.command = opt.command;
    rep.seed = opt.seed;
    auto t0 = std::chrono::steady_clock::now();
    if (opt.command == "validate") run_validate(opt, rep);
    else if (opt.command == "homology") run_homology(opt, rep);
    else if (opt.command == "cohomology") run_cohomology(opt, rep);
    else if (opt.command == "cocycle-check") run_cocycle_check(opt, rep);
    else if (opt.command == "bridge-roundtrip") run_bridge_roundtrip(opt, rep);
    else if (opt.command == "class-equal") run_class_equal(opt, rep);
    else if (opt.command == "ext-laws") run_ext_laws(opt, rep);
    else if (opt.command == "sigma-check") run_sigma_check(opt, rep);
    else if (opt.command == "diagnostics") run_diagnostics(opt, rep);
    else throw Error("unknown command \"" + opt.command + "\"");
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string emit_report(const ReportDocument& rep, const std::string& format) {
    if (format == "structured") {
        nlohmann::json j;
        j["command"] = rep.command;
        j["inputs"] = rep.inputs;
        j["results"] = rep.results;
        j["seed"] = rep.seed;
        nlohmann::json vs = nlohmann::json::array();
        for (const Verdict& v : rep.verdicts) {
            nlohmann::json jv{{"name", v.name}, {"pass", v.pass}};
            if (v.witness) jv["witness"] = *v.witness;
            vs.push_back(std::move(jv));
        }
        j["verdicts"] = std::move(vs);
        return j.dump(2) + "\n";
    }
    if (format != "text") throw ValidationError("unknown report format \"" + format + "\"");
    std::ostringstream out;
    out << "kcoh " << rep.command << "\n";
    for (const auto& [k, v] : rep.inputs) out << "  " << k << ": " << v << "\n";
    out << "  seed: " << rep.seed << "\n";
    for (const auto& [k, v] : rep.results) out << "  " << k << ": " << v << "\n";
    for (const Verdict& v : rep.verdicts) {
        out << "  [" << (v.pass ? "pass" : "FAIL") << "] " << v.name << "\n";
        if (v.witness) out << "         witness: " << *v.witness << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", rep.elapsed_ms);
    out << "  elapsed: " << buf << " ms\n";
    return out.str();
}

int cli_main(int argc, char** argv) {
    CLI::App app{"twisted k-graph cohomology toolkit"};
    app.require_subcommand(1);
    CliOptions opt;
    static const std::pair<const char*, const char*> cmds[] = {
        {"validate", "parse and validate a graph document"},
        {"homology", "cubical homology groups up to --upto"},
        {"cohomology", "cubical cohomology with --coeff up to --upto"},
        {"cocycle-check", "check the cocycle identity of a cocycle document"},
        {"bridge-roundtrip", "squares to pair cocycle and back, compared pointwise"},
        {"class-equal", "decide whether two square tables are cohomologous"},
        {"ext-laws", "extension and section law suite over the given cocycles"},
        {"sigma-check", "groupoid cocycle identities for the induced sigma"},
        {"diagnostics", "bounded aperiodicity and cofinality search"},
    };
    for (const auto& [name, desc] : cmds) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--graph", opt.graph, "graph document (.kg)");
        sub->add_option("--phi", opt.phi, "cocycle document (.cc); may repeat");
        sub->add_option("--coeff", opt.coeff, "coefficient group: Z, Z/n or Q/Z");
        sub->add_option("--upto", opt.upto, "highest degree to compute");
        sub->add_option("--seed", opt.seed, "seed for sampled checks");
        sub->add_option("--triples", opt.triples, "sample count for randomized suites");
        sub->add_option("--bound", opt.bound, "search bound per coordinate");
        sub->add_option("--format", opt.format, "report format: text or structured")
            ->check(CLI::IsMember({"text", "structured"}));
        sub->callback([&opt, sub] { opt.command = sub->get_name(); });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        ReportDocument rep = run_command(opt);
        std::cout << emit_report(rep, opt.format);
        return rep.pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace kcoh
