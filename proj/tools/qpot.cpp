#include "qpot/cli/commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace qpot;
using namespace qpot::cli;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quivers with potentials: PBW deformations, reconstruction and truncated CY checks"};
    app.require_subcommand(1);

    std::size_t degree = 0, slack = 0;
    std::uint64_t seed = kDefaultFitSeed;
    std::string mode = "per-line", format = "text";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->envname("QPOT_FORMAT");
    };

    std::string input;
    std::map<std::string, CLI::App*> subs;
    auto add_doc_command = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", input, "Input document ('-' for stdin)")->required();
        add_common(sub);
        subs[name] = sub;
        return sub;
    };
    add_doc_command("derive", "Relations and deformation of a potential W_{N+1} + W'");
    auto* pbw = add_doc_command("check-pbw", "Evaluate PBW1-4 and PBW2' for a deformation");
    pbw->add_option("--degree", degree, "Check the base for CY and run the gr oracle up to this degree")
        ->envname("QPOT_DEGREE");
    pbw->add_option("--slack", slack, "Extra degrees for the gr oracle ideal (default N)")->envname("QPOT_SLACK");
    add_doc_command("reconstruct", "Recover the lower potential W' from a deformation");
    add_doc_command("check-cy", "Truncated Calabi-Yau check of A(Q, W)")
        ->add_option("--degree", degree, "Truncation degree")
        ->required()
        ->envname("QPOT_DEGREE");
    add_doc_command("hilbert", "Hilbert series of the graded algebra")
        ->add_option("--degree", degree, "Truncation degree")
        ->required()
        ->envname("QPOT_DEGREE");
    auto* fitc = add_doc_command("fit-potential", "Search for a potential with the given relations");
    fitc->add_option("--mode", mode, "per-line or whole-span")
        ->check(CLI::IsMember({"per-line", "whole-span"}))
        ->envname("QPOT_MODE");
    fitc->add_option("--seed", seed, "Seed for the generic-rank sampling")->envname("QPOT_SEED");

    auto* zoo = app.add_subcommand("zoo", "Print a built-in example as a document ('zoo list' for names)");
    std::vector<std::string> zoo_args;
    std::uint64_t characteristic = 0;
    zoo->add_option("example", zoo_args, "Example name followed by its parameters")->required();
    zoo->add_option("--char", characteristic, "Field characteristic (0 for Q)")->envname("QPOT_CHAR");
    add_common(zoo);

    CLI11_PARSE(app, argc, argv);

    Format fmt = format == "json" ? Format::Json : Format::Text;
    Options opt;
    opt.seed = seed;
    opt.mode = mode == "whole-span" ? FitMode::WholeSpan : FitMode::PerGeneratorLine;

    std::string command;
    Report report;
    try {
        if (zoo->parsed()) {
            command = "zoo";
            std::vector<std::string> params(zoo_args.begin() + 1, zoo_args.end());
            std::optional<std::uint64_t> ch;
            if (zoo->count("--char")) ch = characteristic;
            report = run_zoo(zoo_args.front(), params, ch);
        } else {
            for (const auto& [name, sub] : subs)
                if (sub->parsed()) command = name;
            auto* sub = subs[command];
            if (sub->get_option_no_throw("--degree") && sub->count("--degree")) opt.degree = degree;
            if (sub->get_option_no_throw("--slack") && sub->count("--slack")) opt.slack = slack;
            auto doc = parse_document(read_input(input));
            report = run(command, doc, opt);
        }
    } catch (const InputError& e) {
        report = error_report(command, "input", e.what(), kInputError);
    } catch (const MathError& e) {
        report = error_report(command, "math", e.what(), kNegative);
    }
    std::cout << render(report, fmt);
    return report.exit_code;
}
