// nilcert: certify nilpotency pipelines on explicit finite p-groups.
//
// Exit codes: 0 all checks passed, 1 hypothesis refuted, 2 budget or bounds
// exhausted, 3 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilcert/catalog.hpp"
#include "nilcert/certifier.hpp"
#include "nilcert/instance.hpp"

namespace {

using namespace nilcert;

struct CommonArgs {
    std::string source;
    std::string report_path;
    std::string subset;
    std::string law;
    std::string word;
    std::string normal;
    std::string law_word;
    unsigned long long budget = 0; // 0 = defaults
    std::string semple_bounds;
    std::string sections = "standard";
    bool oracle = false;
};

CertifyOptions make_options(const CommonArgs& args) {
    CertifyOptions opts;
    if (const char* env = std::getenv("NILCERT_BUDGET")) {
        unsigned long long b = std::stoull(env);
        opts.enum_budget = b;
        opts.law_budget = b;
    }
    if (args.budget > 0) {
        opts.enum_budget = args.budget;
        opts.law_budget = args.budget;
    }
    if (!args.semple_bounds.empty()) {
        auto parts = detail::split_commas(args.semple_bounds);
        require(parts.size() == 3, "--semple-bounds takes i_max,deg_max,param_max");
        opts.semple_bounds.i_max = std::stoi(parts[0]);
        opts.semple_bounds.deg_max = std::stoi(parts[1]);
        opts.semple_bounds.param_max = std::stoi(parts[2]);
    }
    if (args.sections == "full")
        opts.section_family = SectionFamily::Full;
    else if (args.sections == "standard")
        opts.section_family = SectionFamily::Standard;
    else
        throw error("--sections must be 'full' or 'standard'");
    return opts;
}

int emit(const Certificate& cert, const CommonArgs& args) {
    if (!args.report_path.empty()) {
        std::ofstream out(args.report_path);
        require(static_cast<bool>(out), "cannot write report to '" + args.report_path + "'");
        out << cert.to_json_string();
    }
    std::cout << cert.instance << " [" << cert.pipeline << "]: " << verdict_str(cert.verdict)
              << "\n";
    for (const CheckRecord& rec : cert.checks)
        if (!rec.pass)
            std::cout << "  failed check: " << rec.name
                      << (rec.witness.empty() ? "" : " (" + rec.witness + ")") << "\n";
    return cert.exit_code();
}

std::vector<Element> subset_for(const PcGroup& G, const Instance& inst, const CommonArgs& args,
                                const CertifyOptions& opts) {
    std::string spec = args.subset;
    if (spec.empty() && inst.subset_spec) spec = *inst.subset_spec;
    require(!spec.empty(), "no subset given: use --subset or a 'subset' line in the instance");
    return parse_subset_spec(G, spec, opts.enum_budget);
}

Law law_for(const Instance& inst, const CommonArgs& args) {
    std::string text = args.law;
    if (text.empty() && inst.law_text) text = *inst.law_text;
    require(!text.empty(), "no law given: use --law or a 'law' line in the instance");
    return parse_positive_law(text);
}

Word word_for(const Instance& inst, const CommonArgs& args) {
    std::string text = args.word;
    if (text.empty() && inst.word_text) text = *inst.word_text;
    require(!text.empty(), "no word given: use --word or a 'word' line in the instance");
    return parse_word(text);
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_source = true) {
    if (with_source)
        cmd->add_option("source", args.source, "instance file or catalog:<name>")->required();
    cmd->add_option("--report", args.report_path, "write the JSON certificate here");
    cmd->add_option("--budget", args.budget, "enumeration and law-check budget");
    cmd->add_option("--semple-bounds", args.semple_bounds,
                    "search bounds i_max,deg_max,param_max (default 8,32,8)");
    cmd->add_option("--sections", args.sections, "section family: standard | full");
    cmd->add_flag("--oracle", args.oracle, "force full section enumeration cross-checks");
}

int run(int argc, char** argv) {
    CLI::App app{"certify nilpotency machinery on explicit finite p-groups"};
    app.require_subcommand(1);
    CommonArgs args;

    CLI::App* general = app.add_subcommand(
        "certify-general", "powerful G, normal subset T of finite width, positive law");
    add_common(general, args);
    general->add_option("--subset", args.subset, "generating subset specification");
    general->add_option("--law", args.law, "positive law, e.g. \"x1 x2 = x2 x1\"");

    CLI::App* verbal =
        app.add_subcommand("certify-verbal", "verbal subgroup w(G) with a positive law on G_w");
    add_common(verbal, args);
    verbal->add_option("--word", args.word, "the word w defining w(G)");
    verbal->add_option("--law", args.law, "positive law on the value set");

    CLI::App* hall = app.add_subcommand("hall", "record (class N, class G/N') for normal N");
    add_common(hall, args);
    hall->add_option("--normal", args.normal, "normal subgroup specification")->required();

    CLI::App* nbf = app.add_subcommand(
        "nbf", "powerful G, nilpotent normal N: class(G) <= k + c via power subgroups");
    add_common(nbf, args);
    nbf->add_option("--normal", args.normal, "normal subgroup specification")->required();

    CLI::App* black =
        app.add_subcommand("black", "least k with gamma_k((G^{k!})') = 1, given a law on G");
    add_common(black, args);
    black->add_option("--law-word", args.law_word, "law that must hold on G")->required();

    CLI::App* width_cmd = app.add_subcommand("width", "print the width of a generating subset");
    add_common(width_cmd, args);
    width_cmd->add_option("--subset", args.subset, "subset specification")->required();

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "list or show built-in groups");
    std::string catalog_action, catalog_name;
    catalog_cmd->add_option("action", catalog_action, "list | show")->required();
    catalog_cmd->add_option("name", catalog_name, "group name for 'show'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e); // prints help or the parse diagnostic
        return rc == 0 ? 0 : 3;
    }

    if (catalog_cmd->parsed()) {
        if (catalog_action == "list") {
            for (const CatalogEntry& e : catalog())
                std::cout << e.name << "  " << e.description << "\n";
            return 0;
        }
        if (catalog_action == "show") {
            require(!catalog_name.empty(), "catalog show needs a name");
            const CatalogEntry* e = catalog_find(catalog_name);
            require(e != nullptr, "unknown catalog group '" + catalog_name + "'");
            Instance inst;
            inst.name = e->name;
            inst.relations = e->relations;
            PcGroup G(e->relations);
            std::cout << "# " << e->description << "\n"
                      << "# order " << G.order() << "\n"
                      << emit_instance(inst);
            return 0;
        }
        throw error("catalog action must be 'list' or 'show'");
    }

    CertifyOptions opts = make_options(args);
    if (args.oracle) opts.section_family = SectionFamily::Full;
    Instance inst = load_instance(args.source);
    PcGroup G(inst.relations);

    if (general->parsed()) {
        std::vector<Element> T = subset_for(G, inst, args, opts);
        Law law = law_for(inst, args);
        return emit(certify_general(G, inst.name, T, law, std::nullopt, opts), args);
    }
    if (verbal->parsed()) {
        Word w = word_for(inst, args);
        Law law = law_for(inst, args);
        return emit(certify_verbal(G, inst.name, w, law, opts), args);
    }
    if (hall->parsed()) {
        Subgroup N = parse_normal_spec(G, args.normal, opts.enum_budget);
        return emit(hall_check(G, inst.name, N, opts), args);
    }
    if (nbf->parsed()) {
        Subgroup N = parse_normal_spec(G, args.normal, opts.enum_budget);
        return emit(nbf_powerful_check(G, inst.name, N, opts), args);
    }
    if (black->parsed()) {
        Law v = parse_law(args.law_word);
        return emit(black_check(G, inst.name, v, opts), args);
    }
    if (width_cmd->parsed()) {
        std::vector<Element> T = subset_for(G, inst, args, opts);
        WidthReport wr = width(G, T, opts.enum_budget);
        std::cout << wr.width << "\n";
        return 0;
    }
    throw error("no subcommand selected");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nilcert::budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 2;
    } catch (const nilcert::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
