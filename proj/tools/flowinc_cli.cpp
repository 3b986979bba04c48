// Command-line driver for the flowinc experiments.
#include "flowinc/experiment.hpp"
#include "flowinc/partition.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace flowinc;

namespace {

FamilySpec family_arg(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_family_spec(arg);
    if (arg.find('=') == std::string::npos) throw ValidationError("--family: no file '" + arg + "'");
    std::string text = arg;
    std::replace(text.begin(), text.end(), ';', '\n');
    return parse_family_spec(text);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Flags {
    std::string config;
    std::vector<std::string> families;
    std::string range;
    std::string out;
    std::optional<unsigned> precision, workers;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> sets;
    bool json = false;
    std::map<std::string, std::string> named;  // subcommand option -> value
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incidence and joint counts for polynomial flow families"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config, "key=value experiment file; flags given here override it");
    app.add_option("--family", f.families, "family spec file, or inline 'kind=...;N=...'");
    app.add_option("--n-range", f.range, "scale values: a..b, a..b:step or a,b,c");
    app.add_option("--out", f.out, "write <out>.csv and <out>.json instead of printing");
    app.add_option("--precision", f.precision, "decimal digits, 15..50 (default 20)");
    app.add_option("--workers", f.workers, "worker threads (default 1)");
    app.add_option("--seed", f.seed, "random seed (default 1)");
    app.add_option("--set", f.sets, "extra key=value option for the subcommand");
    app.add_flag("--json", f.json, "print JSON instead of CSV");

    auto named = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(flag, [&f, key](const std::string& v) { f.named[key] = v; }, help);
    };
    std::map<std::string, CLI::App*> subs;
    for (auto& name : experiment_subcommands()) subs[name] = app.add_subcommand(name);
    subs["gen"]->description("generate a family and print its curve records");
    subs["incidences"]->description("exact incidences between two families (or one with itself)");
    subs["joints"]->description("joints of one family, or multijoint sum of several");
    subs["tangent-scan"]->description("tangent pairs among integer parabolas over the scale range");
    subs["n7-grid"]->description("point/parabola grid incidences over the scale range");
    subs["square-sieve"]->description("count (a,b,c) with 4ac = b^2 over the scale range");
    subs["partition"]->description("polynomial partition of planar points");
    subs["bounds"]->description("evaluate the joint and incidence bounds for given counts");
    subs["lift-demo"]->description("weak Malcev basis and pushforward fields of a nilpotent algebra");
    subs["fit"]->description("least-squares exponent of y against x in log-log scale");
    for (auto* s : {subs["incidences"], subs["joints"]}) named(s, "--n", "n", "dimension used by the bounds");
    named(subs["partition"], "--points", "points", "CSV file of x,y or x,y,weight rows");
    named(subs["partition"], "--random", "random", "number of random points when no file is given (default 128)");
    named(subs["partition"], "--box", "box", "random coordinates in 0..box (default 1000)");
    named(subs["partition"], "--max-weight", "max-weight", "random weights in 1..max (default 1)");
    named(subs["partition"], "--rounds", "rounds", "partition rounds (default 5)");
    named(subs["bounds"], "--L1", "L1", "#L1");
    named(subs["bounds"], "--L2", "L2", "#L2 (default #L1)");
    named(subs["bounds"], "--incidences", "I", "#I");
    named(subs["bounds"], "--joints", "J", "#J");
    named(subs["bounds"], "--n", "n", "ambient dimension (default 3)");
    named(subs["lift-demo"], "--algebra", "algebra", "heisenberg, abelian:<n>, free:<gens>:<step> or a structure-constant file");
    named(subs["lift-demo"], "--z", "z", "subalgebra basis, vectors separated by ';'");
    named(subs["fit"], "--input", "input", "CSV file with a header row");
    named(subs["fit"], "--series", "series", "inline x:y,x:y,...");
    named(subs["fit"], "--xcol", "xcol", "x column name (default first)");
    named(subs["fit"], "--ycol", "ycol", "y column name (default second)");
    named(subs["square-sieve"], "--list", "list", "1 to list the triples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig cfg;
        if (!f.config.empty()) cfg = parse_config(read_file(f.config));
        for (auto& [name, sub] : subs)
            if (sub->parsed()) cfg.subcommand = name;
        if (cfg.subcommand.empty()) throw ValidationError("no subcommand given (see --help)");
        for (auto& fam : f.families) cfg.families.push_back(family_arg(fam));
        if (!f.range.empty()) cfg.scales = parse_range(f.range);
        if (!f.out.empty()) cfg.out = f.out;
        if (f.precision) cfg.precision = *f.precision;
        if (f.workers) cfg.workers = *f.workers;
        if (f.seed) cfg.seed = *f.seed;
        for (auto& s : f.sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + s + "'");
            cfg.options[s.substr(0, eq)] = s.substr(eq + 1);
        }
        for (auto& [k, v] : f.named) cfg.options[k] = v;

        Report r = run_experiment(cfg);
        if (!cfg.out.empty()) {
            write_report(r, cfg.out);
            std::cout << "wrote " << cfg.out << ".csv and " << cfg.out << ".json (" << r.rows.size() << " rows)\n";
        } else if (f.json) {
            std::cout << r.to_json().dump(2) << "\n";
        } else {
            std::cout << r.to_csv();
            if (!r.summary.empty()) std::cerr << r.summary.dump() << "\n";
        }
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ScaleCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SearchExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
