#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"

#include "ccsim/analysis.hpp"
#include "ccsim/scheme_grouping.hpp"
#include "ccsim/scheme_mn.hpp"
#include "ccsim/simulator.hpp"

namespace {

using namespace ccsim;

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct SchemeOptions {
    std::string scheme;
    int K = 0, N = 0, t = 0, h = 1;
    int n = 0, a = 0, b = 0;
    std::uint64_t payload_bytes = 64;
    std::uint64_t seed = 0;
    std::string config_path;
};

void add_scheme_options(CLI::App* cmd, SchemeOptions& opt) {
    cmd->set_help_flag("--help", "print help");  // frees -h/--h for the multiplier
    cmd->add_option("--scheme", opt.scheme, "mn | grouping");
    cmd->add_option("--K", opt.K, "users (mn)");
    cmd->add_option("--N", opt.N, "files");
    cmd->add_option("--t", opt.t, "caching multiplicity (mn)");
    cmd->add_option("--h", opt.h, "replication multiplier (mn)");
    cmd->add_option("--n", opt.n, "ground-set size (grouping)");
    cmd->add_option("--a", opt.a, "user-label size (grouping)");
    cmd->add_option("--b", opt.b, "slot-label size (grouping)");
    cmd->add_option("--payload-bytes", opt.payload_bytes, "bytes per file");
    cmd->add_option("--seed", opt.seed, "PRNG seed");
    cmd->add_option("--config", opt.config_path, "key=value scheme description file");
}

// key=value scheme description files; values fill options not set on the
// command line
void apply_config(CLI::App* cmd, SchemeOptions& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + opt.config_path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto fill_str = [&](const char* key, std::string& dst, const char* flag) {
        if (kv.count(key) && cmd->count(flag) == 0) dst = kv[key];
    };
    auto fill_int = [&](const char* key, auto& dst, const char* flag) {
        if (kv.count(key) && cmd->count(flag) == 0)
            dst = static_cast<std::remove_reference_t<decltype(dst)>>(std::stoll(kv[key]));
    };
    fill_str("scheme", opt.scheme, "--scheme");
    fill_int("K", opt.K, "--K");
    fill_int("N", opt.N, "--N");
    fill_int("t", opt.t, "--t");
    fill_int("h", opt.h, "--h");
    fill_int("n", opt.n, "--n");
    fill_int("a", opt.a, "--a");
    fill_int("b", opt.b, "--b");
    fill_int("payload_bytes", opt.payload_bytes, "--payload-bytes");
    fill_int("seed", opt.seed, "--seed");
}

std::unique_ptr<Scheme> build_scheme(SchemeOptions& opt, CLI::App* cmd) {
    apply_config(cmd, opt);
    if (opt.scheme == "mn") {
        if (opt.K < 1 || opt.N < 1)
            throw std::invalid_argument("mn scheme requires --K and --N");
        return std::make_unique<MnScheme>(opt.K, opt.N, opt.t, opt.h);
    }
    if (opt.scheme == "grouping") {
        if (opt.n < 1) throw std::invalid_argument("grouping scheme requires --n");
        int N = opt.N;
        if (N == 0) N = static_cast<int>(binomial_u64(opt.n, opt.a));  // default N = K
        return std::make_unique<GroupingScheme>(opt.n, opt.a, opt.b, N);
    }
    throw std::invalid_argument("unknown scheme '" + opt.scheme + "' (expected mn or grouping)");
}

DemandVector parse_demand(const std::string& spec, const SchemeParams& params,
                          std::uint64_t seed) {
    if (spec == "distinct") return distinct_demand(params.K, params.N);
    DemandVector demand;
    if (spec == "uniform") {
        demand.d.assign(static_cast<size_t>(params.K), 0);
        return demand;
    }
    if (spec == "random") {
        SplitMix64 rng(seed);
        demand.d.resize(static_cast<size_t>(params.K));
        for (auto& d : demand.d)
            d = static_cast<int>(rng.next() % static_cast<std::uint64_t>(params.N));
        return demand;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) demand.d.push_back(std::stoi(item));
    if (demand.user_count() != params.K)
        throw std::invalid_argument("demand length != K");
    for (int d : demand.d)
        if (d < 0 || d >= params.N)
            throw std::invalid_argument("demand file index out of range (file index " +
                                        std::to_string(d) + " >= N)");
    return demand;
}

std::vector<long> parse_n_list(const std::string& spec) {
    std::vector<long> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(static_cast<long>(std::stod(item)));  // accepts 1e4 notation
    return out;
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file " + out_path);
        out << text;
    }
}

int cmd_simulate(SchemeOptions& opt, CLI::App* cmd, const std::string& demand_spec,
                 const std::string& transcript_path, const std::string& format) {
    auto scheme = build_scheme(opt, cmd);
    const SchemeParams& params = scheme->params();
    DemandVector demand = parse_demand(demand_spec, params, opt.seed);
    FileStore store = random_store(params.N, params.F, opt.payload_bytes, opt.seed);

    std::vector<Transmission> transmissions = scheme->deliver(demand);
    materialize_payloads(transmissions, store);
    SimulationResult result = run(*scheme, store, demand);

    if (!transcript_path.empty())
        write_or_print(render_transcript(*scheme, demand, transmissions), transcript_path);
    if (format == "transcript")
        std::cout << render_transcript(*scheme, demand, transmissions);
    else if (format == "csv")
        std::cout << result.to_record() << "\n";
    else
        std::cout << scheme->name() << " " << result.to_summary() << "\n";
    return result.ok ? 0 : kExitCheckFailure;
}

int cmd_verify(SchemeOptions& opt, CLI::App* cmd) {
    auto scheme = build_scheme(opt, cmd);
    const SchemeParams& params = scheme->params();
    bool all_pass = true;
    auto report = [&](const std::string& name, bool pass, const std::string& detail) {
        std::cout << "check " << name << ": " << (pass ? "pass" : "FAIL")
                  << (detail.empty() ? "" : " (" + detail + ")") << "\n";
        if (!pass) all_pass = false;
    };

    ValidationReport vr = validate_symmetric(params, scheme->placement());
    report("symmetry", vr.ok(), vr.ok() ? "" : vr.to_text());

    const bool brute = params.K <= 20;
    for (int k = 1; k <= params.K; ++k) {
        IdentityResult r = brute ? union_count_identity(params, scheme->placement(), k)
                                 : union_count_identity_by_slots(params, scheme->placement(), k);
        if (!r.equal) {
            report("union_identity k=" + std::to_string(k), false,
                   "lhs=" + r.lhs.get_str() + " rhs=" + r.rhs.get_str());
        }
    }
    report("union_identity", true, "all k in [1," + std::to_string(params.K) + "]");
    for (int k = 1; k <= params.t; ++k) {
        IdentityResult r =
            brute ? intersection_count_identity(params, scheme->placement(), k)
                  : intersection_count_identity_by_slots(params, scheme->placement(), k);
        if (!r.equal)
            report("intersection_identity k=" + std::to_string(k), false,
                   "lhs=" + r.lhs.get_str() + " rhs=" + r.rhs.get_str());
    }
    report("intersection_identity", true, "all k in [1," + std::to_string(params.t) + "]");

    bool divisible = divisibility_check(params);
    if (scheme->name() == "mn")
        report("divisibility", divisible, "F mod C(K,t)");
    else
        std::cout << "info divisibility: " << (divisible ? "true" : "false") << "\n";

    FileStore store = random_store(params.N, params.F, opt.payload_bytes, opt.seed);
    SweepMode mode;
    double total = std::pow(static_cast<double>(params.N), params.K);
    if (total > static_cast<double>(mode.exhaustive_cap)) {
        mode.exhaustive = false;
        mode.seed = opt.seed;
    }
    SweepResult sweep = sweep_demands(*scheme, store, mode);
    report("decodability", sweep.all_ok,
           std::to_string(sweep.demands_run) + " demands");

    Rational rstar = optimal_rate(params);
    if (scheme->name() == "mn") {
        report("worst_rate_equals_optimal", sweep.worst_rate == rstar,
               "measured " + sweep.worst_rate.get_str() + ", R* " + rstar.get_str());
    } else {
        report("worst_rate_at_least_optimal", sweep.worst_rate >= rstar,
               "measured " + sweep.worst_rate.get_str() + ", R* " + rstar.get_str() +
                   ", gap " + Rational(sweep.worst_rate - rstar).get_str());
    }
    return all_pass ? 0 : kExitCheckFailure;
}

int cmd_sweep(SchemeOptions& opt, CLI::App* cmd, const std::string& mode_name,
              std::uint64_t count, bool table, const std::string& out_path) {
    auto scheme = build_scheme(opt, cmd);
    const SchemeParams& params = scheme->params();
    FileStore store = random_store(params.N, params.F, opt.payload_bytes, opt.seed);
    SweepMode mode;
    if (mode_name == "random") {
        mode.exhaustive = false;
        mode.random_count = count;
        mode.seed = opt.seed;
    } else if (mode_name != "exhaustive") {
        throw std::invalid_argument("--mode must be exhaustive or random");
    }
    SweepResult sweep = sweep_demands(*scheme, store, mode, table);

    std::ostringstream os;
    if (table) {
        os << "demand,transmissions,rate\n";
        for (const auto& [demand, cnt] : sweep.per_demand) {
            Rational rate(static_cast<unsigned long>(cnt),
                          static_cast<unsigned long>(params.F));
            rate.canonicalize();
            std::string ds;
            for (size_t i = 0; i < demand.d.size(); ++i)
                ds += (i ? " " : "") + std::to_string(demand.d[i]);
            os << ds << "," << cnt << "," << rate.get_str() << "\n";
        }
    }
    std::string worst_ds;
    for (size_t i = 0; i < sweep.worst_demand.d.size(); ++i)
        worst_ds += (i ? "," : "") + std::to_string(sweep.worst_demand.d[i]);
    os << "# worst rate=" << sweep.worst_rate.get_str() << " demand=" << worst_ds
       << " demands_run=" << sweep.demands_run << " all_ok=" << (sweep.all_ok ? 1 : 0)
       << " Rstar=" << optimal_rate(params).get_str() << "\n";
    write_or_print(os.str(), out_path);
    return sweep.all_ok ? 0 : kExitCheckFailure;
}

int cmd_analyze(double epsilon, const std::string& n_spec, const std::string& out_path) {
    TrendTable table = trend_table(epsilon, parse_n_list(n_spec));
    write_or_print(table.to_csv(), out_path);
    return table.verdicts.all_pass() ? 0 : kExitCheckFailure;
}

int cmd_pack(std::uint64_t F, const std::vector<std::string>& inputs,
             const std::string& out_path) {
    std::vector<std::vector<std::uint8_t>> data;
    for (const auto& path : inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open input file " + path);
        data.emplace_back(std::istreambuf_iterator<char>(in),
                          std::istreambuf_iterator<char>());
    }
    FileStore store = pack(data, F);
    std::ostringstream os;
    os << "files=" << store.file_count() << " F=" << store.F << " L=" << store.L << "\n";
    for (int i = 0; i < store.file_count(); ++i) {
        os << "file=" << i << " len=" << store.original_lengths[static_cast<size_t>(i)]
           << "\n";
        for (std::uint64_t j = 0; j < store.F; ++j)
            os << to_hex(store.block(i, j)) << "\n";
    }
    write_or_print(os.str(), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric uncoded caching scheme simulator"};
    app.require_subcommand(1);

    SchemeOptions sim_opt, ver_opt, swp_opt;
    std::string demand_spec = "distinct";
    std::string transcript_path, format = "human", out_path;

    CLI::App* simulate = app.add_subcommand("simulate", "run one demand end to end");
    add_scheme_options(simulate, sim_opt);
    simulate->add_option("--demand", demand_spec, "distinct | uniform | random | d1,d2,...");
    simulate->add_option("--transcript", transcript_path, "write transmission log here");
    simulate->add_option("--format", format, "human | csv | transcript");

    CLI::App* verify = app.add_subcommand("verify", "full property battery for one instance");
    add_scheme_options(verify, ver_opt);

    std::string sweep_mode = "exhaustive";
    std::uint64_t sweep_count = 500;
    bool sweep_table = false;
    std::string sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "worst-case rate over a demand set");
    add_scheme_options(sweep, swp_opt);
    sweep->add_option("--mode", sweep_mode, "exhaustive | random");
    sweep->add_option("--count", sweep_count, "random demand count");
    sweep->add_flag("--table", sweep_table, "emit per-demand table");
    sweep->add_option("--out", sweep_out, "output path (default stdout)");

    double epsilon = 0.0;
    std::string n_spec, analyze_out;
    CLI::App* analyze = app.add_subcommand("analyze", "asymptotic trend table (CSV)");
    analyze->add_option("--epsilon", epsilon, "epsilon > 0")->required();
    analyze->add_option("--n", n_spec, "comma-separated n values (1e4 notation ok)")
        ->required();
    analyze->add_option("--out", analyze_out, "output path (default stdout)");

    std::uint64_t pack_F = 0;
    std::vector<std::string> pack_inputs;
    std::string pack_out;
    CLI::App* pack_cmd = app.add_subcommand("pack", "split files into subfiles");
    pack_cmd->add_option("--F", pack_F, "subpacketization level")->required();
    pack_cmd->add_option("inputs", pack_inputs, "input files")->required();
    pack_cmd->add_option("--out", pack_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
        if (simulate->parsed())
            return cmd_simulate(sim_opt, simulate, demand_spec, transcript_path, format);
        if (verify->parsed()) return cmd_verify(ver_opt, verify);
        if (sweep->parsed())
            return cmd_sweep(swp_opt, sweep, sweep_mode, sweep_count, sweep_table, sweep_out);
        if (analyze->parsed()) {
            if (epsilon <= 0.0) throw std::invalid_argument("--epsilon must be > 0");
            return cmd_analyze(epsilon, n_spec, analyze_out);
        }
        if (pack_cmd->parsed()) return cmd_pack(pack_F, pack_inputs, pack_out);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage-error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage-error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "check-error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
