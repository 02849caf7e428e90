#include "bsig/bsig.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bsig::ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bsig::Rat cli_rat(const std::string& s, const char* flag) {
    try {
        return bsig::parse_rat(s);
    } catch (const bsig::Error& e) {
        throw bsig::ParseError(std::string(flag) + ": " + e.what());
    }
}

bsig::Point cli_point(const std::string& s, const char* flag) {
    try {
        return bsig::parse_point(s);
    } catch (const bsig::Error& e) {
        throw bsig::ParseError(std::string(flag) + ": " + e.what());
    }
}

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string render_check_text(const bsig::CharacterizationReport& rep,
                              const bsig::AgreeReport& oracle) {
    std::ostringstream o;
    o << rep.header << "\n";
    for (const bsig::CheckRow& row : rep.rows) {
        o << row.group;
        if (!row.candidate.empty()) o << " [" << row.candidate << "]";
        o << ": expected " << yn(row.expected) << ", got " << yn(row.actual)
          << (row.agree ? "" : "  << MISMATCH") << "\n";
    }
    o << "characterizations agree: " << yn(rep.all_agree) << "\n";
    o << "oracle agreement: " << yn(oracle.ok) << "\n";
    for (const std::string& m : oracle.mismatches) o << "  " << m << "\n";
    return o.str();
}

nlohmann::ordered_json render_check_json(const bsig::CharacterizationReport& rep,
                                         const bsig::AgreeReport& oracle) {
    nlohmann::ordered_json j;
    j["header"] = rep.header;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const bsig::CheckRow& row : rep.rows) {
        nlohmann::ordered_json r;
        r["group"] = row.group;
        r["candidate"] = row.candidate;
        r["expected"] = row.expected;
        r["actual"] = row.actual;
        r["agree"] = row.agree;
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["characterizations_agree"] = rep.all_agree;
    j["oracle_agreement"] = oracle.ok;
    j["oracle_mismatches"] = oracle.mismatches;
    return j;
}

struct Options {
    std::string file, mu, script, format = "text", t0 = "0", h = "1", horizon;
    std::vector<std::string> T_list;
    long long p_bound = 8;
    bool no_phase_check = false, analyze_flow = false;
};

int dispatch(const CLI::App& app, const Options& opt) {
    using namespace bsig;
    std::ostream& out = std::cout;
    bool json = opt.format == "json";
    auto emit = [&](const std::string& text, const nlohmann::ordered_json& j) {
        if (json)
            out << j.dump(2) << "\n";
        else
            out << text;
    };

    const CLI::App* sub = app.get_subcommands().front();
    const std::string& cmd = sub->get_name();
    std::string text = slurp(opt.file);
    std::string kind = file_kind(text);
    auto want = [&](const char* a, const char* b = nullptr) {
        if (kind == a || (b && kind == b)) return;
        std::string msg = "'" + opt.file + "' is not a " + a;
        if (b) msg += " or " + std::string(b);
        throw ParseError(msg + " file (found '" + kind + "')");
    };

    if (cmd == "analyze") {
        want("dsignal", "rsignal");
        if (kind == "dsignal") {
            DSignalAnalysis an = analyze_signal_d(parse_dsignal(text));
            emit(render_text(an), to_json(an));
        } else {
            RSignalAnalysis an = analyze_signal_r(parse_rsignal(text));
            emit(render_text(an), to_json(an));
        }
        return 0;
    }
    if (cmd == "point") {
        want("dsignal", "rsignal");
        Point mu = cli_point(opt.mu, "--mu");
        if (kind == "dsignal") {
            DPointAnalysis a = analyze_point_d(parse_dsignal(text), mu);
            emit(render_text(a), to_json(a));
        } else {
            RPointAnalysis a = analyze_point_r(parse_rsignal(text), mu);
            emit(render_text(a), to_json(a));
        }
        return 0;
    }
    if (cmd == "embed") {
        want("dsignal");
        RealSignal r = embed(parse_dsignal(text), cli_rat(opt.t0, "--t0"), cli_rat(opt.h, "--h"));
        out << to_text(r);
        return 0;
    }
    if (cmd == "sample") {
        want("rsignal");
        DiscreteSignal d = sample(parse_rsignal(text), cli_rat(opt.t0, "--t0"),
                                  cli_rat(opt.h, "--h"), !opt.no_phase_check);
        out << to_text(d);
        return 0;
    }
    if (cmd == "perturb") {
        want("dsignal", "rsignal");
        EditScript script = parse_edit_script(opt.script);
        if (kind == "dsignal")
            out << to_text(apply_script(parse_dsignal(text), script));
        else
            out << to_text(apply_script(parse_rsignal(text), script));
        return 0;
    }
    if (cmd == "flow") {
        want("flow", "phi");
        FlowSpec spec = parse_flow(text);
        DiscreteSignal sig = run_flow(spec.phi, spec.alpha, spec.init);
        if (opt.analyze_flow) {
            DSignalAnalysis an = analyze_signal_d(sig);
            emit(render_text(an), to_json(an));
        } else {
            out << to_text(sig);
        }
        return 0;
    }
    if (cmd == "check") {
        want("dsignal", "rsignal");
        if (opt.horizon.empty()) throw ParseError("--horizon is required for check");
        CharacterizationReport rep;
        AgreeReport oracle;
        if (kind == "dsignal") {
            DiscreteSignal sig = parse_dsignal(text);
            long long horizon = 0;
            try {
                horizon = std::stoll(opt.horizon);
            } catch (const std::exception&) {
                throw ParseError("--horizon: expected an integer");
            }
            rep = characterization_report(sig, opt.p_bound, horizon);
            oracle = agree(sig, horizon, opt.p_bound);
        } else {
            RealSignal sig = parse_rsignal(text);
            if (opt.T_list.empty())
                throw ParseError("--T is required for real-time check");
            std::vector<Rat> cands;
            for (const std::string& s : opt.T_list) cands.push_back(cli_rat(s, "--T"));
            Rat horizon = cli_rat(opt.horizon, "--horizon");
            rep = characterization_report(sig, cands, horizon);
            oracle = agree(sig, horizon, cands);
        }
        emit(render_check_text(rep, oracle), render_check_json(rep, oracle));
        return rep.all_agree && oracle.ok ? 0 : 1;
    }
    throw ParseError("unknown subcommand");
}

}

int main(int argc, char** argv) {
    CLI::App app{"closed-form binary signal periodicity toolkit"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    Options opt;

    auto named_sub = [&](const char* name, const char* blurb) {
        CLI::App* sub = app.add_subcommand(name, blurb);
        sub->set_help_flag("--help", "print help");
        return sub;
    };

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "report encoding")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* analyze = named_sub("analyze", "full periodicity report for a signal file");
    analyze->add_option("file", opt.file, "dsignal or rsignal file")->required();
    add_format(analyze);

    CLI::App* point = named_sub("point", "periodicity report for one value");
    point->add_option("file", opt.file, "dsignal or rsignal file")->required();
    point->add_option("--mu", opt.mu, "value as a bit string")->required();
    add_format(point);

    CLI::App* embed = named_sub("embed", "lay a discrete signal onto a time grid");
    embed->add_option("file", opt.file, "dsignal file")->required();
    embed->add_option("--t0", opt.t0, "grid origin (rational)");
    embed->add_option("--h", opt.h, "grid step (rational, positive)");

    CLI::App* sample = named_sub("sample", "read a real signal on a uniform grid");
    sample->add_option("file", opt.file, "rsignal file")->required();
    sample->add_option("--t0", opt.t0, "grid origin (rational)");
    sample->add_option("--h", opt.h, "grid step (rational, positive)");
    sample->add_flag("--no-phase-check", opt.no_phase_check,
                     "allow breakpoints inside grid cells");

    CLI::App* perturb = named_sub("perturb", "apply an edit script to a signal");
    perturb->add_option("file", opt.file, "dsignal or rsignal file")->required();
    perturb->add_option("--script", opt.script,
                        "edits separated by ';' (set, set-progression, set-interval, "
                        "set-train, shift-t0)")
        ->required();

    CLI::App* flow = named_sub("flow", "generate a trajectory of an asynchronous system");
    flow->add_option("file", opt.file, "flow spec file")->required();
    flow->add_flag("--analyze", opt.analyze_flow, "analyze the generated signal");
    add_format(flow);

    CLI::App* check = named_sub("check", "characterization and oracle cross-check");
    check->add_option("file", opt.file, "dsignal or rsignal file")->required();
    check->add_option("--p-bound", opt.p_bound, "largest discrete period to test");
    check->add_option("--T", opt.T_list, "real period candidates (rationals)");
    check->add_option("--horizon", opt.horizon, "evaluation horizon")->required();
    add_format(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return dispatch(app, opt);
    } catch (const bsig::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const bsig::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
