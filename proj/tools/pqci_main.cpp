// pqci: command-line front end. Talks to the core exclusively through the
// C API in include/pqci.h; all rendering works off the JSON reports.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pqci.h"

namespace {

using nlohmann::json;

struct ContextDeleter {
    void operator()(pqci_context* ctx) const { pqci_context_free(ctx); }
};

std::string take_string(char* s) {
    std::string out = s ? s : "";
    pqci_string_free(s);
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string scalar_str(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void render_targets(std::ostream& os, const json& targets) {
    for (const auto& t : targets) {
        os << "  " << (t["pass"].get<bool>() ? "pass" : "FAIL") << "  "
           << t["name"].get<std::string>() << ": actual " << t["actual"].get<double>()
           << ", target " << t["target"].get<double>() << " +- "
           << t["tolerance"].get<double>() << "\n";
    }
}

void render_text(std::ostream& os, const json& report) {
    const std::string command = report["command"];
    const json& r = report["results"];
    os << "pqci " << command << " (v" << report["version"].get<std::string>() << ")\n";
    os << "config: " << report["config"].dump() << "\n";
    if (command == "decide" || command == "trace") {
        os << "outcome: " << r["outcome"].get<std::string>() << "\n";
        const json& tr = r["transcript"];
        os << "signs: " << tr["signs"].dump() << ", honesty pass: "
           << tr["honesty"]["pass"].dump() << "\n";
        os << "elementary gate total: " << tr["cost"]["elementary_total"] << "\n";
        if (command == "trace") {
            for (const auto& stage : tr["stages"]) {
                os << "stage " << stage["stage"].get<std::string>() << "\n";
                if (stage.contains("states")) {
                    int pair = 0;
                    for (const auto& dump : stage["states"]) {
                        os << "  pair " << ++pair << ":\n";
                        std::istringstream lines(dump.get<std::string>());
                        for (std::string line; std::getline(lines, line);)
                            os << "    " << line << "\n";
                    }
                }
            }
        }
    } else if (command == "verify") {
        os << "mode: " << r["mode"].get<std::string>() << ", pairs: " << r["pairs"]
           << ", mismatches: " << r["mismatches"] << ", max terms: " << r["max_terms"] << "\n";
        for (const auto& m : r["mismatch_examples"]) os << "  mismatch: " << m.dump() << "\n";
        os << (r["mismatches"].get<std::uint64_t>() == 0 ? "PASS" : "FAIL") << "\n";
    } else if (command == "attack") {
        if (r.contains("stats")) os << "stats: " << r["stats"].dump() << "\n";
        if (r.contains("signs"))
            os << "signs: " << r["signs"].dump()
               << ", predicates: " << r["classical_predicates"].dump() << "\n";
        if (r.contains("p_zero"))
            os << "marked: " << r["marked_count"] << "/" << (1ull << r["m"].get<unsigned>())
               << ", p_zero: " << r["p_zero"] << ", sampled: " << r["sampled_outcome"] << "\n";
        if (r.contains("targets")) render_targets(os, r["targets"]);
        os << (r["all_targets_pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    } else if (command == "cost") {
        for (const auto& row : r["rows"]) {
            os << "t=" << row["t"] << " n=" << row["n"] << " m=" << row["m"]
               << " adders=" << row["cost"]["adder_runs"]
               << " multipliers=" << row["cost"]["multiplier_runs"]
               << " cnot=" << row["cost"]["cnot_gates"]
               << " single=" << row["cost"]["single_qubit_gates"]
               << " total=" << row["cost"]["elementary_total"]
               << " qubits=" << row["qubits"]["tracked_total"] << "\n";
        }
        for (const auto& ratio : r["ratios"])
            os << "ratio t=" << ratio["t_from"] << "->" << ratio["t_to"] << ": "
               << ratio["ratio"].get<double>() << "\n";
    }
}

void render_csv(std::ostream& os, const json& report) {
    const std::string command = report["command"];
    const json& r = report["results"];
    if (command == "cost") {
        os << "t,n,m,adder_runs,multiplier_runs,single_qubit_gates,cnot_gates,"
              "elementary_total,tracked_qubits\n";
        for (const auto& row : r["rows"]) {
            os << row["t"] << "," << row["n"] << "," << row["m"] << ","
               << row["cost"]["adder_runs"] << "," << row["cost"]["multiplier_runs"] << ","
               << row["cost"]["single_qubit_gates"] << "," << row["cost"]["cnot_gates"] << ","
               << row["cost"]["elementary_total"] << "," << row["qubits"]["tracked_total"]
               << "\n";
        }
        return;
    }
    if (command == "attack" && r.contains("targets")) {
        os << "name,target,tolerance,actual,pass\n";
        for (const auto& t : r["targets"])
            os << csv_escape(t["name"].get<std::string>()) << "," << t["target"] << ","
               << t["tolerance"] << "," << t["actual"] << "," << (t["pass"].get<bool>() ? 1 : 0)
               << "\n";
        return;
    }
    // Generic fallback: flat key,value rows over the results object.
    os << "key,value\n";
    for (const auto& [key, value] : r.items())
        os << csv_escape(key) << "," << csv_escape(scalar_str(value)) << "\n";
}

// True when the report carries a failure the process should exit 1 on.
bool report_failed(const json& report) {
    const json& r = report.at("results");
    if (r.contains("mismatches") && r["mismatches"].get<std::uint64_t>() > 0) return true;
    if (r.contains("all_targets_pass") && !r["all_targets_pass"].get<bool>()) return true;
    return false;
}

int write_report(const std::string& report_text, const std::string& format,
                 const std::string& out_path) {
    json report = json::parse(report_text);
    std::ostringstream body;
    if (format == "json")
        body << report.dump(2) << "\n";
    else if (format == "csv")
        render_csv(body, report);
    else
        render_text(body, report);
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "pqci: cannot open " << out_path << " for writing\n";
            return 2;
        }
        f << body.str();
    }
    return report_failed(report) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and stress tester for a quantum privacy-preserving "
                 "two-party circle intersection protocol"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pqci_version()));
    app.set_config("--config", "", "Read options from an INI/TOML file");

    unsigned t = 3;
    std::string alice = "2,2,1";
    std::string bob = "3,2,1";
    std::string alice2;
    std::string strategy;
    std::uint64_t trials = 10000;
    std::uint64_t samples = 0;
    unsigned decoys = 8;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string out_path;
    std::vector<unsigned> t_values;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Deterministic seed")->capture_default_str();
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
        cmd->add_option("--out", out_path, "Write the report to a file instead of stdout");
    };
    auto add_circles = [&](CLI::App* cmd) {
        cmd->add_option("--t", t, "Coordinate precision in bits")->capture_default_str();
        cmd->add_option("--alice", alice, "Alice's circle as x,y,r")->capture_default_str();
        cmd->add_option("--bob", bob, "Bob's circle as x,y,r")->capture_default_str();
    };

    CLI::App* decide = app.add_subcommand("decide", "Run the protocol once on two circles");
    add_circles(decide);
    add_common(decide);

    CLI::App* verify = app.add_subcommand(
        "verify", "Compare protocol outcomes with the classical predicate");
    verify->add_option("--t", t, "Coordinate precision in bits")->capture_default_str();
    verify->add_option("--samples", samples,
                       "Random circle pairs to draw; 0 sweeps all pairs (t <= 3)")
        ->capture_default_str();
    add_common(verify);

    CLI::App* attack = app.add_subcommand("attack", "Run an attack strategy and check rates");
    attack->add_option("--strategy", strategy,
                       "One of: bob-direct-one, bob-direct-both, bob-intercept-resend, "
                       "bob-entangle-measure, alice-multi-input, alice-superposed, "
                       "eve-intercept")
        ->required();
    add_circles(attack);
    attack->add_option("--alice2", alice2, "Second circle for alice-multi-input");
    attack->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    attack->add_option("--decoys", decoys, "Decoy qubits for eve-intercept")
        ->capture_default_str();
    add_common(attack);

    CLI::App* cost = app.add_subcommand("cost", "Gate-cost accounting per precision");
    cost->add_option("--t", t_values, "Precisions to tabulate")
        ->expected(-1)
        ->default_val(std::vector<unsigned>{4, 8, 16, 32});
    add_common(cost);

    CLI::App* trace = app.add_subcommand("trace", "Stage-by-stage run record (t <= 3)");
    add_circles(trace);
    add_common(trace);

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<pqci_context, ContextDeleter> ctx(pqci_context_new());
    if (!ctx) {
        std::cerr << "pqci: out of memory\n";
        return 2;
    }

    char* report = nullptr;
    pqci_status status = PQCI_OK;
    if (decide->parsed()) {
        status = pqci_decide(ctx.get(), t, alice.c_str(), bob.c_str(), seed, &report);
    } else if (verify->parsed()) {
        status = pqci_verify(ctx.get(), t, samples, seed, &report);
    } else if (attack->parsed()) {
        status = pqci_attack(ctx.get(), strategy.c_str(), t, alice.c_str(), bob.c_str(),
                             alice2.empty() ? nullptr : alice2.c_str(), trials, decoys, seed,
                             &report);
    } else if (cost->parsed()) {
        std::vector<std::uint32_t> ts(t_values.begin(), t_values.end());
        status = pqci_cost(ctx.get(), ts.data(), ts.size(), &report);
    } else if (trace->parsed()) {
        status = pqci_trace(ctx.get(), t, alice.c_str(), bob.c_str(), seed, &report);
    }

    if (status != PQCI_OK) {
        std::cerr << "pqci: " << pqci_context_error(ctx.get()) << "\n";
        return 2;
    }
    return write_report(take_string(report), format, out_path);
}
