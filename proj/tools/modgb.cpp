#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "modgb/driver.hpp"
#include "modgb/io.hpp"
#include "modgb/systems.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_rejected = 1;
constexpr int exit_input = 2;
constexpr int exit_resources = 3;

modgb::IdealSpec load_ideal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw modgb::Error("cannot open '" + path + "'");
    return modgb::parse_ideal(in);
}

const char* status_name(modgb::CheckReport::Status s) {
    using Status = modgb::CheckReport::Status;
    switch (s) {
        case Status::certified: return "certified";
        case Status::probably_correct: return "probably-correct";
        case Status::rejected: return "rejected";
    }
    return "?";
}

const char* mode_name(modgb::CheckMode m) {
    switch (m) {
        case modgb::CheckMode::probabilistic: return "probabilistic";
        case modgb::CheckMode::det_integer: return "deterministic-integer";
        case modgb::CheckMode::det_modular: return "deterministic-modular";
    }
    return "?";
}

void print_report(const modgb::CheckReport& rep) {
    std::cerr << "check: " << mode_name(rep.mode) << " -> " << status_name(rep.status);
    if (rep.status == modgb::CheckReport::Status::probably_correct)
        std::cerr << " (error bound " << rep.error_bound.get_d() << ")";
    if (rep.failed_generator) std::cerr << ", generator " << (*rep.failed_generator + 1);
    if (rep.failed_pair)
        std::cerr << ", pair (" << rep.failed_pair->first + 1 << "," << rep.failed_pair->second + 1
                  << ")";
    if (rep.failed_prime) std::cerr << ", prime " << *rep.failed_prime;
    std::cerr << '\n';
}

void print_stats(const modgb::RunStatistics& stats) {
    std::cerr << "learning prime: " << stats.learning_prime << '\n';
    std::cerr << "primes used: " << stats.events.size() << ", skipped: " << stats.primes_skipped
              << ", replay fallbacks: " << stats.replay_fallbacks
              << ", branches: " << stats.branches_created << '\n';
    for (const auto& ev : stats.events) {
        std::cerr << "  " << ev.prime << ' '
                  << (ev.kind == modgb::PrimeEvent::Kind::learning  ? "learn"
                      : ev.kind == modgb::PrimeEvent::Kind::replay ? "replay"
                                                                   : "plain")
                  << " pairs=" << ev.pairs_reduced << " skipped=" << ev.pairs_skipped << " branch="
                  << ev.branch << (ev.new_branch ? "*" : "") << '\n';
    }
    const auto& it = stats.learning_stats.iterations;
    std::cerr << "learning run: " << it.size() << " iterations, "
              << stats.learning_stats.pairs_reduced << " pairs reduced, "
              << stats.learning_stats.zero_reductions << " zero reductions\n";
    for (const auto& is : it)
        std::cerr << "  deg " << is.degree << ": pairs=" << is.pairs << " matrix=" << is.matrix_rows
                  << "x" << is.matrix_cols << " new=" << is.new_elements
                  << " zero=" << is.zero_pairs << '\n';
}

int run_compute(const std::string& input, const std::string& output, double epsilon,
                const std::string& certify_mode, int prime_bits, int threads, bool stats,
                bool integer_output, int verbosity) {
    modgb::IdealSpec ideal = load_ideal(input);

    modgb::RunConfig config;
    config.prime_bits = prime_bits;
    config.workers = threads;
    config.verbosity = verbosity;
    if (!certify_mode.empty()) {
        config.epsilon = 0;
        config.check_mode = certify_mode == "modular" ? modgb::CheckMode::det_modular
                                                      : modgb::CheckMode::det_integer;
    } else {
        config.epsilon = epsilon;
        config.check_mode = modgb::CheckMode::probabilistic;
    }

    const modgb::GBRunResult result = modgb::modular_gbasis(ideal, config);

    std::ostringstream text;
    if (integer_output)
        modgb::print_basis(text, result.primitive, ideal.vars);
    else
        modgb::print_basis(text, result.basis, ideal.vars);
    if (output.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream out(output);
        if (!out) throw modgb::Error("cannot open '" + output + "' for writing");
        out << text.str();
    }

    print_report(result.report);
    if (stats) print_stats(result.stats);
    return result.report.accepted() ? exit_ok : exit_rejected;
}

int run_gen(const std::string& system, unsigned n) {
    modgb::IdealSpec ideal;
    if (system == "cyclic")
        ideal = modgb::cyclic(n);
    else if (system == "katsura")
        ideal = modgb::katsura(n);
    else
        ideal = modgb::alea6();
    modgb::print_basis(std::cout, ideal.generators, ideal.vars);
    return exit_ok;
}

int run_check(const std::string& basis_path, const std::string& ideal_path,
              const std::string& mode_name_in, double epsilon, int threads) {
    const modgb::IdealSpec basis_spec = load_ideal(basis_path);
    const modgb::IdealSpec ideal = load_ideal(ideal_path);
    if (basis_spec.vars != ideal.vars)
        throw modgb::Error("basis and ideal files declare different variables");

    modgb::CheckMode mode = modgb::CheckMode::det_integer;
    if (mode_name_in == "probabilistic") mode = modgb::CheckMode::probabilistic;
    if (mode_name_in == "modular") mode = modgb::CheckMode::det_modular;

    modgb::RationalCandidate cand;
    const modgb::RatRing ring;
    for (const auto& g : basis_spec.generators) {
        const mpq_class inv = 1 / g.lead_coeff();
        cand.basis.push_back(term_mul(ring, g, modgb::Monomial::unit(g.lead_mono().nvars()), inv));
        cand.primitive.push_back(modgb::primitive_part(g));
    }

    modgb::VerifyOptions opts;
    opts.epsilon = epsilon;
    opts.threads = threads;
    const modgb::CheckReport rep =
        modgb::certify(modgb::normalized_generators(ideal), cand, mode, opts);
    print_report(rep);
    return rep.accepted() ? exit_ok : exit_rejected;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Groebner bases over Q by the multi-modular method"};
    app.require_subcommand(1);

    std::string input, output, certify_mode, system;
    double epsilon = 1e-7;
    int prime_bits = 29;
    int threads = 1;
    unsigned gen_n = 0;
    bool stats = false, integer_output = false;
    int verbosity = 0;

    auto* compute = app.add_subcommand("compute", "compute a Groebner basis over Q");
    compute->add_option("file", input, "ideal file")->required();
    auto* eps_opt = compute->add_option("--epsilon", epsilon,
                                        "probabilistic check error bound (default 1e-7)");
    compute->add_option("--certify", certify_mode, "deterministic check: integer or modular")
        ->check(CLI::IsMember({"integer", "modular"}))
        ->excludes(eps_opt);
    compute->add_option("--prime-bits", prime_bits, "working prime class")
        ->check(CLI::IsMember({24, 29, 31}));
    compute->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
    compute->add_flag("--stats", stats, "print run statistics to stderr");
    compute->add_flag("--integer", integer_output, "print the integer-cleared primitive basis");
    compute->add_flag("-v,--verbose", verbosity, "progress to stderr");
    compute->add_option("--output", output, "write the basis to a file instead of stdout");

    auto* gen = app.add_subcommand("gen", "emit a benchmark system as an ideal file");
    gen->add_option("system", system, "cyclic, katsura or alea6")
        ->required()
        ->check(CLI::IsMember({"cyclic", "katsura", "alea6"}));
    gen->add_option("n", gen_n, "system size (ignored for alea6)");

    std::string basis_path, ideal_path, check_mode = "integer";
    auto* check = app.add_subcommand("check", "certify a basis file against an ideal file");
    check->add_option("basis", basis_path, "basis file")->required();
    check->add_option("ideal", ideal_path, "ideal file")->required();
    check->add_option("--mode", check_mode, "probabilistic, integer or modular")
        ->check(CLI::IsMember({"probabilistic", "integer", "modular"}));
    check->add_option("--epsilon", epsilon, "probabilistic error bound");
    check->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
        if (compute->parsed())
            return run_compute(input, output, epsilon, certify_mode, prime_bits, threads, stats,
                               integer_output, verbosity);
        if (gen->parsed()) {
            if (system != "alea6" && gen_n == 0)
                throw modgb::Error("gen " + system + " needs a size argument");
            return run_gen(system, gen_n);
        }
        return run_check(basis_path, ideal_path, check_mode, epsilon, threads);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    } catch (const modgb::PrimeSupplyExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_resources;
    } catch (const modgb::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const modgb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return exit_resources;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
}
