// Command-line front end: pyramid inspection, generator images, relation
// catalogs and the verification suites.

#include "wyang/io.hpp"
#include "wyang/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace wyang;

namespace {

struct Common {
    std::string pyramid;
    std::string mu;
    int rmax = 0;
    int dmax = 6;
    int jobs = 1;
    std::string side = "R";
    std::string json_out;
    std::string oracle = "closed";
    std::string shifted;
    double budget = 0;
};

SignedPyramid load(const std::string& path) { return load_pyramid(read_json_file(path)); }

AdmissibleShape shape_for(const WSuper& w, const std::string& text) {
    return text.empty() ? AdmissibleShape::minimal(w.shifts()) : AdmissibleShape::parse(text, w.shifts());
}

GenOracle parse_oracle(const std::string& s) {
    if (s == "closed") return GenOracle::Closed;
    if (s == "gauss") return GenOracle::Gauss;
    if (s == "brute") return GenOracle::Brute;
    throw std::invalid_argument("unknown oracle " + s);
}

json pyramid_info(const SignedPyramid& pi) {
    json j = pyramid_to_json(pi);
    j["level"] = pi.level();
    j["M"] = pi.M();
    j["N"] = pi.N();
    j["main_mode"] = pi.main_mode();
    j["e"] = element_to_json(build_e(pi), pi.algebra());
    j["h"] = build_h(pi);
    const GradingReport g = check_good_grading(pi);
    j["good_grading"] = g.ok;
    if (pi.main_mode()) {
        const TruncationSpec t = to_shift_and_level(pi);
        j["sigma"] = shift_to_json(t.sigma);
        j["minimal_shape"] = AdmissibleShape::minimal(t.sigma).parts();
    }
    return j;
}

int report(const std::vector<CheckReport>& rs, const std::string& json_out) {
    bool failed = false;
    for (const auto& r : rs) {
        std::cout << r.id << " " << r.status << " instances=" << r.instances << " failures=" << r.failures.size();
        if (r.skipped) std::cout << " skipped=" << r.skipped;
        std::cout << " ms=" << static_cast<long long>(r.millis);
        if (!r.note.empty()) std::cout << " (" << r.note << ")";
        std::cout << "\n";
        failed = failed || r.failed();
    }
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw std::runtime_error("cannot write " + json_out);
        out << reports_to_json(rs).dump(2) << "\n";
    }
    return failed ? 1 : 0;
}

int run_verify(const std::string& what, const Common& o) {
    const SignedPyramid pi = load(o.pyramid);
    const int rmax = o.rmax > 0 ? o.rmax : pi.level() + 2;
    if (what == "dims") return report({check_dimensions(pi, o.dmax)}, o.json_out);
    if (what == "baby") {
        if (o.side != "R" && o.side != "L") throw std::invalid_argument("--side must be R or L");
        return report(check_baby(pi, o.side == "R" ? Side::R : Side::L, rmax), o.json_out);
    }
    if (what == "shift") {
        if (o.shifted.empty()) throw std::invalid_argument("verify shift needs --shifted <file>");
        return report(check_shift_independence(pi, load(o.shifted), o.dmax, rmax), o.json_out);
    }
    WSuper w(pi);
    const AdmissibleShape mu = shape_for(w, o.mu);
    if (what == "main") return report(check_main_theorem(w, mu, rmax, o.jobs, parse_oracle(o.oracle), o.budget * 1000), o.json_out);
    ParabolicImages img(w, mu, parse_oracle(o.oracle));
    return report({check_relations(img, relation_catalog(mu, rmax), o.jobs, "main.relations", deadline_after(o.budget * 1000))},
                  o.json_out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite W-superalgebras and truncated shifted Yangians"};
    app.require_subcommand(1);

    std::string file;
    auto* pyr = app.add_subcommand("pyramid", "Inspect or convert a pyramid file");
    pyr->require_subcommand(1);
    auto* info = pyr->add_subcommand("info", "Print grading data and the shift matrix");
    info->add_option("file", file, "pyramid JSON")->required()->check(CLI::ExistingFile);
    auto* conv = pyr->add_subcommand("convert", "Rows to (sigma, level) or back");
    conv->add_option("file", file, "pyramid or truncation JSON")->required()->check(CLI::ExistingFile);

    Common o;
    std::string family = "D";
    int a = 1, b = 0, i = 1, j = 1, r = 1;
    auto* wgen = app.add_subcommand("wgen", "Image of one generator in U(p)");
    wgen->add_option("--pyramid", o.pyramid)->required()->check(CLI::ExistingFile);
    wgen->add_option("--mu", o.mu, "admissible shape, e.g. 1,1,1 (default: minimal)");
    wgen->add_option("--family", family, "D, Dp, E or F")->check(CLI::IsMember({"D", "Dp", "E", "F"}));
    wgen->add_option("--a", a, "block");
    wgen->add_option("--b", b, "second block of a composite E_{a,b} or F_{b,a}");
    wgen->add_option("--i", i);
    wgen->add_option("--j", j);
    wgen->add_option("--r", r, "degree");
    wgen->add_option("--oracle", o.oracle, "closed, gauss or brute")->check(CLI::IsMember({"closed", "gauss", "brute"}));

    auto* cat = app.add_subcommand("catalog", "Relation instances as JSON lines");
    cat->add_option("--pyramid", o.pyramid)->required()->check(CLI::ExistingFile);
    cat->add_option("--mu", o.mu);
    cat->add_option("--rmax", o.rmax, "degree bound (default: level + 2)");

    std::string what;
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("suite", what, "main, dims, relations, baby or shift")
        ->required()
        ->check(CLI::IsMember({"main", "dims", "relations", "baby", "shift"}));
    ver->add_option("--pyramid", o.pyramid)->required()->check(CLI::ExistingFile);
    ver->add_option("--mu", o.mu);
    ver->add_option("--rmax", o.rmax, "degree bound (default: level + 2)");
    ver->add_option("--dmax", o.dmax, "filtered degree bound for dimensions");
    ver->add_option("--side", o.side, "R or L");
    ver->add_option("--json", o.json_out, "write the report here");
    ver->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    ver->add_option("--oracle", o.oracle)->check(CLI::IsMember({"closed", "gauss", "brute"}));
    ver->add_option("--shifted", o.shifted, "row-shifted pyramid for the shift suite")->check(CLI::ExistingFile);
    ver->add_option("--budget", o.budget, "wall-clock limit in seconds for relation checks (0: none)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) {
            std::cout << pyramid_info(load(file)).dump(2) << "\n";
        } else if (conv->parsed()) {
            const json in = read_json_file(file);
            if (in.contains("rows"))
                std::cout << truncation_to_json(to_shift_and_level(pyramid_from_json(in))).dump(2) << "\n";
            else
                std::cout << pyramid_to_json(load_pyramid(in)).dump(2) << "\n";
        } else if (wgen->parsed()) {
            WSuper w(load(o.pyramid));
            ParabolicImages img(w, shape_for(w, o.mu), parse_oracle(o.oracle));
            GeneratorSymbol g;
            if (family == "D")
                g = GeneratorSymbol::D(a, i, j, r);
            else if (family == "Dp")
                g = GeneratorSymbol::Dp(a, i, j, r);
            else if (family == "E")
                g = GeneratorSymbol::E(a, b ? b : a + 1, i, j, r);
            else
                g = GeneratorSymbol::F(b ? b : a + 1, a, i, j, r);
            ImageTable env(img);
            std::cout << element_to_json(env.compute(g), w.algebra()).dump() << "\n";
        } else if (cat->parsed()) {
            const SignedPyramid pi = load(o.pyramid);
            WSuper w(pi);
            std::cout << catalog_jsonl(relation_catalog(shape_for(w, o.mu), o.rmax > 0 ? o.rmax : pi.level() + 2));
        } else if (ver->parsed()) {
            return run_verify(what, o);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
