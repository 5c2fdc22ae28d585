// Command-line front end: loads category documents, validates them, lists
// generators, evaluates expressions, runs the axiom certification suite and
// emits the bundled fixtures.
//
// Exit codes: 0 success / all checks pass; 1 validation or check failures;
// 2 parse, schema or resolution errors; 3 evaluation errors (including
// unavailable fiber products).

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "obt/category_io.hpp"
#include "obt/expr.hpp"
#include "obt/fiberwise.hpp"
#include "obt/fixtures.hpp"
#include "obt/suite.hpp"
#include "obt/transform.hpp"
#include "obt/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitEvalError = 3;

struct CommonOpts {
    std::string category_file;
    bool require_fibered = false;
    std::string target = "universal";
    std::string format = "text";
    int max_source = 2;
    int max_bundles = 1;
    long long coeff_min = -2;
    long long coeff_max = 2;
    std::uint64_t instance_cap = 10000;
    std::uint64_t seed = 0;
};

obt::Bounds bounds_of(const CommonOpts& o) {
    obt::Bounds b;
    b.max_source = o.max_source;
    b.max_bundles = o.max_bundles;
    b.coeff_min = o.coeff_min;
    b.coeff_max = o.coeff_max;
    b.instance_cap = o.instance_cap;
    b.seed = o.seed;
    return b;
}

obt::World load_world(const CommonOpts& o) {
    obt::World w = obt::load_category_file(o.category_file);
    if (o.require_fibered && !w.fibered)
        throw obt::SchemaError("--fibered given but the document has no fibered section");
    return w;
}

int run_genfixture(const std::string& name, const std::string& out_file) {
    nlohmann::json doc = obt::fixtures::make_document(name);
    std::string path = out_file.empty() ? name + ".json" : out_file;
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write `" << path << "`\n";
        return kExitEvalError;
    }
    out << doc.dump(1) << "\n";
    std::cout << "wrote " << path << "\n";
    return kExitOk;
}

int run_validate(const CommonOpts& o) {
    obt::World w = load_world(o);
    obt::ValidationReport rep = obt::validate(w.category(), w.fibered_or_null());
    if (o.format == "json") {
        nlohmann::json violations = nlohmann::json::array();
        for (const auto& v : rep.violations)
            violations.push_back({{"check", v.check}, {"detail", v.detail}});
        nlohmann::json warnings = nlohmann::json::array();
        for (const auto& v : rep.warnings)
            warnings.push_back({{"check", v.check}, {"detail", v.detail}});
        nlohmann::json j{{"category", w.category().name()},
                         {"valid", rep.ok()},
                         {"violations", violations},
                         {"warnings", warnings}};
        std::cout << j.dump(1) << "\n";
    } else {
        std::cout << rep.str();
    }
    return rep.ok() ? kExitOk : kExitCheckFailed;
}

int run_generators(const CommonOpts& o, const std::string& context_id) {
    obt::World w = load_world(o);
    auto ctx = w.category().find_morphism(context_id);
    if (!ctx) throw obt::ResolveError("unknown morphism id `" + context_id + "`");
    obt::UniversalTheory om(w.category(), w.fibered_or_null());
    auto gens = om.generators(*ctx, o.max_source, o.max_bundles);
    if (o.format == "json") {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& k : gens) list.push_back(k.render());
        nlohmann::json j{{"category", w.category().name()},
                         {"context", context_id},
                         {"count", gens.size()},
                         {"generators", list}};
        std::cout << j.dump(1) << "\n";
    } else {
        for (const auto& k : gens) std::cout << k.render() << "\n";
        std::cout << "total: " << gens.size() << "\n";
    }
    return kExitOk;
}

std::vector<std::string> expression_lines(const std::string& expr, const std::string& file) {
    std::vector<std::string> lines;
    if (!expr.empty()) lines.push_back(expr);
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw obt::Error("cannot open expression file `" + file + "`");
        std::string line;
        while (std::getline(in, line)) {
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            lines.push_back(line);
        }
    }
    if (lines.empty()) throw obt::Error("no expression given (use --expr or --expr-file)");
    return lines;
}

int run_eval(const CommonOpts& o, const std::string& expr, const std::string& expr_file,
             bool wrap_gamma) {
    obt::World w = load_world(o);
    obt::UniversalTheory om(w.category(), w.fibered_or_null());
    std::optional<obt::FiberwiseTheory> fw;
    if (o.target == "fiberwise") fw.emplace(w.category(), w.fibered_or_null());
    else if (o.target != "universal")
        throw obt::Error("unknown target theory `" + o.target + "`");

    for (const std::string& line : expression_lines(expr, expr_file)) {
        std::string text = wrap_gamma ? "gamma(" + line + ")" : line;
        try {
            obt::ExprPtr ast = obt::parse_expression(text);
            std::string rendered = obt::render_expression(*ast);
            std::string value = fw ? obt::Evaluator<obt::FiberwiseTheory>(om, *fw).evaluate(*ast)
                                   : obt::Evaluator<obt::UniversalTheory>(om, om).evaluate(*ast);
            std::cout << rendered << " = " << value << "\n";
        } catch (const obt::Error&) {
            std::cerr << "while evaluating `" << text << "`:\n";
            throw;
        }
    }
    return kExitOk;
}

int run_check(const CommonOpts& o) {
    obt::World w = load_world(o);
    obt::ValidationReport vrep = obt::validate(w.category(), w.fibered_or_null());
    if (!vrep.ok()) {
        std::cerr << "category failed validation:\n" << vrep.str();
        return kExitCheckFailed;
    }
    obt::Bounds b = bounds_of(o);
    obt::UniversalTheory om(w.category(), w.fibered_or_null());

    obt::CheckReport rep;
    rep.category = w.category().name();
    rep.theory = o.target;
    rep.bounds = b;
    if (o.target == "universal") {
        rep.append(obt::check_bivariant_axioms(om, b));
        rep.append(obt::check_orientation_axioms(om, b));
        rep.append(obt::check_additivity(om, b));
    } else if (o.target == "fiberwise") {
        obt::FiberwiseTheory fw(w.category(), w.fibered_or_null());
        rep.append(obt::check_bivariant_axioms(fw, b));
        rep.append(obt::check_orientation_axioms(fw, b));
        rep.append(obt::check_grothendieck(om, fw, b));
        rep.append(obt::check_additivity(om, b));
    } else {
        throw obt::Error("unknown target theory `" + o.target + "`");
    }

    if (o.format == "json")
        std::cout << rep.to_json().dump(1) << "\n";
    else
        std::cout << rep.str();
    return rep.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal oriented bivariant theories over finite categories"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string gen_name, gen_out;
    std::string context_id, expr, expr_file;

    auto add_common = [&](CLI::App* cmd, bool with_bounds) {
        cmd->add_option("--category", o.category_file, "category document (JSON)")->required();
        cmd->add_flag("--fibered", o.require_fibered,
                      "require the document's fibered section (it is used whenever present)");
        if (with_bounds) {
            cmd->add_option("--max-source", o.max_source,
                            "largest generator source size (0 = unbounded)");
            cmd->add_option("--max-bundles", o.max_bundles, "largest bundle count per cycle");
            cmd->add_option("--coeff-min", o.coeff_min, "smallest test coefficient");
            cmd->add_option("--coeff-max", o.coeff_max, "largest test coefficient");
            cmd->add_option("--instance-cap", o.instance_cap,
                            "instance budget per axiom (0 = exhaustive)");
            cmd->add_option("--seed", o.seed, "stride seed for truncated sweeps");
        }
        cmd->add_option("--format", o.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* gen = app.add_subcommand("genfixture", "emit a bundled category document");
    gen->add_option("name", gen_name, "fixture name: diamond or fs4")->required();
    gen->add_option("-o,--out", gen_out, "output file (default <name>.json)");

    CLI::App* val = app.add_subcommand("validate", "validate a category document");
    add_common(val, false);

    CLI::App* gens = app.add_subcommand("generators", "list canonical cycle classes");
    add_common(gens, true);
    gens->add_option("--context", context_id, "hom context (a morphism id)")->required();

    CLI::App* ev = app.add_subcommand("eval", "evaluate expressions");
    add_common(ev, false);
    ev->add_option("--target", o.target, "target theory: universal or fiberwise");
    ev->add_option("--expr", expr, "expression text");
    ev->add_option("--expr-file", expr_file, "file with one expression per line");

    CLI::App* ga = app.add_subcommand("gamma", "map an expression through the "
                                               "universal transformation");
    add_common(ga, false);
    ga->add_option("--target", o.target, "target theory: universal or fiberwise");
    ga->add_option("--expr", expr, "expression text")->required();

    CLI::App* chk = app.add_subcommand("check", "certify the axioms within bounds");
    add_common(chk, true);
    chk->add_option("--target", o.target, "target theory: universal or fiberwise");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (gen->parsed()) return run_genfixture(gen_name, gen_out);
        if (val->parsed()) return run_validate(o);
        if (gens->parsed()) return run_generators(o, context_id);
        if (ev->parsed()) return run_eval(o, expr, expr_file, false);
        if (ga->parsed()) return run_eval(o, expr, expr_file, true);
        if (chk->parsed()) return run_check(o);
    } catch (const obt::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const obt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const obt::ResolveError& e) {
        std::cerr << "resolve error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const obt::ContextError& e) {
        std::cerr << "context error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const obt::Error& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return kExitEvalError;
    }
    return kExitOk;
}
