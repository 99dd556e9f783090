#include <CLI11.hpp>

#include "mag/report.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace {

struct SubOptions {
    std::string file;
    bool json = false;
    int sample = 0;
    std::uint64_t seed = 0;
};

int run_subcommand(const std::string& name, const SubOptions& so) {
    std::ifstream in(so.file);
    if (!in) {
        std::cerr << "cannot open file: " << so.file << "\n";
        return 3;
    }
    std::ostringstream text;
    text << in.rdbuf();

    mag::RunOptions opt;
    opt.subcommand = name;
    opt.json = so.json;
    opt.sample = so.sample;
    opt.seed = so.seed;

    mag::RunResult result = mag::run_document(text.str(), opt);
    std::cout << result.output;
    std::cerr << result.diagnostics;
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic analysis of Monge-Ampere systems: classification, "
                 "characteristic systems, derived flags, intermediate integrals, and "
                 "exceptional integral manifolds."};
    app.require_subcommand(1);

    const std::pair<const char*, const char*> subs[] = {
        {"classify", "classify the equation type via the characteristic quadratic"},
        {"characteristics", "extract characteristic systems J = {theta, omega1, omega2}"},
        {"derived-flag", "compute derived flags of the characteristic systems"},
        {"hypotheses", "check the integrability/theorem hypotheses"},
        {"check-integral", "certify declared intermediate integrals (dF in J)"},
        {"check-surface", "classify declared surfaces: solution / exceptional / not-in-K"},
        {"normal-form", "verify declared normal-form data against an integrable J"},
        {"report", "run every check requested by the document"},
    };

    std::map<std::string, std::shared_ptr<SubOptions>> options;
    for (const auto& [name, desc] : subs) {
        auto so = std::make_shared<SubOptions>();
        options[name] = so;
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("file", so->file, "system document (.mag)")->required();
        sub->add_flag("--json", so->json, "emit the machine-readable JSON report");
        sub->add_option("--sample", so->sample,
                        "sample N random rational points for pointwise non-vanishing checks");
        sub->add_option("--seed", so->seed, "seed for sampling reproducibility");
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [name, so] : options)
        if (app.got_subcommand(name))
            return run_subcommand(name, *so);
    return 3;
}
