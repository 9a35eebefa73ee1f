#include "tactor/cli/run.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "tactor/cli/export.hpp"
#include "tactor/model/analyzer.hpp"

namespace tactor::cli {

using checker::Verdict;
using checker::VerdictKind;

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_sequence(const model::CompiledModel& model, const checker::EventSequence& seq) {
    std::ostringstream os;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        os << "  #" << i + 1 << "  " << model.instances[seq[i].actor].name << '.'
           << model.class_of(seq[i].actor).servers[seq[i].server].name << "  serve=" << seq[i].serve << '\n';
    }
    return os.str();
}

void print_verdict(const model::CompiledModel& model, const Verdict& v, std::ostream& out) {
    out << to_string(v.kind);
    if (!v.name.empty()) out << " [" << v.name << "]";
    if (v.bounded) out << " (bounded)";
    if (!v.detail.empty()) out << ": " << v.detail;
    out << '\n';
    if (v.failed() && v.witness) out << format_trace(model, *v.witness);
}

} // namespace

std::string format_trace(const model::CompiledModel& model, const checker::Trace& trace) {
    std::ostringstream os;
    int k = 0;
    auto line = [&](const semantics::TransitionLabel& l, const char* suffix) {
        os << "  #" << ++k << "  " << model.instances[l.actor].name << '.'
           << model.class_of(l.actor).servers[l.server].name << "  tag=" << l.tag << " serve=" << l.serve
           << " deadline=" << runtime::format_deadline(l.deadline) << suffix << '\n';
    };
    for (const auto& l : trace.labels) {
        if (l.kind == semantics::LabelKind::Event) line(l, "");
    }
    if (trace.aborted_move && trace.aborted_move->kind == semantics::LabelKind::Event) line(*trace.aborted_move, "  (aborted)");
    return os.str();
}

int exit_status(const std::vector<Verdict>& verdicts) {
    for (const auto& v : verdicts) {
        if (v.failed()) return kExitViolation;
    }
    return kExitPass;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    auto source = read_file(config.model_path);
    if (!source) {
        err << "error: cannot read model file '" << config.model_path << "'\n";
        return kExitUsage;
    }
    auto loaded = model::load_model(*source);
    if (!loaded.ok()) {
        for (const auto& d : loaded.diagnostics) err << config.model_path << ':' << syntax::to_string(d) << '\n';
        return kExitUsage;
    }
    const auto& model = *loaded.model;
    semantics::Limits limits;
    limits.max_states = config.max_states;

    if (config.compare) {
        auto other = *config.compare == CompareMode::FttsVsTts ? semantics::Mode::Tts : semantics::Mode::RelaxedFtts;
        auto first = semantics::explore(model, semantics::Mode::Ftts, limits);
        auto second = semantics::explore(model, other, limits);
        auto cmp = checker::compare_event_behavior(first, second, config.depth);
        out << "compare ftts vs " << semantics::to_string(other) << " (depth " << config.depth << "): ";
        if (cmp.equal) {
            out << "Equal";
            if (first.bounded || second.bounded) out << " (bounded)";
            out << '\n';
            return kExitPass;
        }
        out << "Counterexample, only under " << (cmp.only_in_first ? "ftts" : semantics::to_string(other)) << '\n'
            << format_sequence(model, cmp.counterexample);
        return kExitViolation;
    }

    std::vector<checker::Assertion> assertions;
    if (config.assertion_path) {
        auto text = read_file(*config.assertion_path);
        if (!text) {
            err << "error: cannot read assertion file '" << *config.assertion_path << "'\n";
            return kExitUsage;
        }
        auto parsed = checker::parse_assertions(*text, model, config.mode);
        if (!parsed.ok()) {
            for (const auto& d : parsed.diagnostics) err << *config.assertion_path << ": " << d << '\n';
            return kExitUsage;
        }
        assertions = std::move(parsed.assertions);
    }

    auto space = semantics::explore(model, config.mode, limits);
    out << "model: " << config.model_path << "  mode: " << semantics::to_string(config.mode) << '\n';
    out << "states: " << space.states.size() << "  transitions: " << space.transitions.size() << "  "
        << (space.bounded ? "(bounded)" : "(complete)") << '\n';

    std::vector<Verdict> verdicts;
    verdicts.push_back(checker::check_deadlock(space));
    auto violations = checker::collect_violations(space);
    verdicts.insert(verdicts.end(), violations.begin(), violations.end());
    auto asserted = checker::check_assertions(space, assertions);
    verdicts.insert(verdicts.end(), asserted.begin(), asserted.end());

    for (const auto& v : verdicts) print_verdict(model, v, out);
    if (violations.empty()) out << "violations: none\n";

    if (config.export_format != ExportFormat::None) {
        std::ofstream file(*config.export_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << *config.export_path << "'\n";
            return kExitUsage;
        }
        if (config.export_format == ExportFormat::Dot) export_dot(model, space, file);
        else file << export_json(model, space);
        if (!file) {
            err << "error: failed writing '" << *config.export_path << "'\n";
            return kExitUsage;
        }
    }
    return exit_status(verdicts);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Timed actor model checker"};
    app.require_subcommand(1);
    auto* check = app.add_subcommand("check", "Explore a model and check deadlock, queue overflow, deadlines and assertions");

    RunConfig config;
    std::string mode = "ftts";
    std::string export_format;
    std::string compare;
    check->add_option("model", config.model_path, "Model source file")->required();
    check->add_option("--mode", mode, "Semantics")->check(CLI::IsMember({"ftts", "rftts", "tts"}));
    check->add_option("--assert", config.assertion_path, "Assertion file");
    check->add_option("--max-states", config.max_states, "State limit")->check(CLI::PositiveNumber);
    check->add_option("--export", export_format, "Export format")->check(CLI::IsMember({"dot", "json"}));
    check->add_option("--out", config.export_path, "Export destination");
    check->add_option("--compare", compare, "Compare event behavior")
        ->check(CLI::IsMember({"ftts-vs-tts", "ftts-vs-rftts"}));
    check->add_option("--depth", config.depth, "Event depth for --compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << check->help();
        return kExitUsage;
    }

    config.mode = *semantics::parse_mode(mode);
    if (!export_format.empty()) config.export_format = export_format == "dot" ? ExportFormat::Dot : ExportFormat::Json;
    if (config.export_format != ExportFormat::None && !config.export_path) {
        err << "error: --export requires --out FILE\n";
        return kExitUsage;
    }
    if (config.export_format == ExportFormat::None && config.export_path) {
        err << "error: --out requires --export dot|json\n";
        return kExitUsage;
    }
    if (!compare.empty()) config.compare = compare == "ftts-vs-tts" ? CompareMode::FttsVsTts : CompareMode::FttsVsRftts;
    return execute(config, out, err);
}

} // namespace tactor::cli
