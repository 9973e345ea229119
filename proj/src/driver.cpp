#include "modgb/driver.hpp"

#include <omp.h>

#include <exception>
#include <iostream>

namespace modgb {

void RunConfig::validate() const {
    if (workers < 1) throw Error("worker count must be >= 1");
    if (epsilon < 0) throw Error("epsilon must be >= 0");
    if (epsilon == 0 && check_mode == CheckMode::probabilistic)
        throw Error("epsilon = 0 requires a deterministic check mode");
    prime_class_top(prime_bits);
    prime_class_top(learning_bits);
}

std::vector<IntPoly> normalized_generators(const IdealSpec& ideal) {
    std::vector<IntPoly> gens;
    gens.reserve(ideal.generators.size());
    for (std::size_t i = 0; i < ideal.generators.size(); ++i) {
        IntPoly g = primitive_part(ideal.generators[i]);
        if (g.zero()) throw Error("generator " + std::to_string(i + 1) + " normalizes to zero");
        gens.push_back(std::move(g));
    }
    return gens;
}

namespace {

struct PrimeRun {
    std::uint32_t prime = 0;
    GBRunOutput out;
    PrimeEvent::Kind kind = PrimeEvent::Kind::plain;
};

class ModularDriver {
public:
    ModularDriver(const IdealSpec& ideal, const RunConfig& config)
        : config_(config),
          gens_(normalized_generators(ideal)),
          working_(prime_class_top(config.prime_bits)) {}

    GBRunResult run() {
        GBRunResult result;
        if (gens_.empty()) {
            result.report.mode = config_.check_mode;
            result.report.status = CheckReport::Status::certified;
            return result;
        }

        // step 2: learning prime, record mode
        {
            const std::uint32_t p0 = config_.learning_bits == config_.prime_bits
                                         ? draw_prime(working_)
                                         : draw_learning_prime();
            PrimeRun first;
            first.prime = p0;
            first.kind = PrimeEvent::Kind::learning;
            first.out = run_prime(p0, GBMode::record, nullptr, config_.workers);
            stats_.learning_prime = p0;
            stats_.learning_stats = first.out.stats;
            trace_ = std::move(first.out.trace);
            if (process(first, result)) return result;
        }

        // step 3/4 loop: batches of `workers` primes
        for (;;) {
            std::vector<PrimeRun> batch;
            if (!trace_) {
                // a branch mismatch cleared the learning data; re-record
                PrimeRun r;
                r.prime = draw_prime(working_);
                r.kind = PrimeEvent::Kind::learning;
                r.out = run_prime(r.prime, GBMode::record, nullptr, config_.workers);
                stats_.learning_stats = r.out.stats;
                trace_ = std::move(r.out.trace);
                batch.push_back(std::move(r));
            } else {
                batch.resize(static_cast<std::size_t>(config_.workers));
                for (auto& r : batch) r.prime = draw_prime(working_);
                run_batch(batch);
            }
            for (auto& r : batch)
                if (process(r, result)) return result;
        }
    }

private:
    std::uint32_t draw_prime(PrimeSequence& seq) {
        for (;;) {
            const std::uint32_t p = seq.next();
            bool ok = true;
            for (const auto& g : gens_) {
                if (mpz_fdiv_ui(g.lead_coeff().get_mpz_t(), p) == 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) return p;
            ++stats_.primes_skipped;
        }
    }

    std::uint32_t draw_learning_prime() {
        PrimeSequence seq(prime_class_top(config_.learning_bits));
        return draw_prime(seq);
    }

    GBRunOutput run_prime(std::uint32_t p, GBMode mode, const LearningTrace* trace,
                          int threads) const {
        const PrimeField field(p);
        std::vector<ModPoly> gens_p;
        gens_p.reserve(gens_.size());
        for (const auto& g : gens_) {
            auto [gp, vanished] = map_mod(g, field);
            assert(!vanished);  // such primes were skipped at draw time
            (void)vanished;
            gens_p.push_back(std::move(gp));
        }
        return gbasis_modp(gens_p, field, mode, trace, threads);
    }

    /// Replay `batch` concurrently; a ReplayMismatch falls back to a plain
    /// run for that prime. Results are deterministic per prime, so the
    /// thread count cannot change anything downstream.
    void run_batch(std::vector<PrimeRun>& batch) {
        const LearningTrace* trace = &*trace_;
        const int engine_threads = batch.size() > 1 ? 1 : config_.workers;
        std::exception_ptr error;
        const long n = static_cast<long>(batch.size());
#pragma omp parallel for schedule(dynamic) num_threads(config_.workers) if (batch.size() > 1)
        for (long k = 0; k < n; ++k) {
            auto& r = batch[static_cast<std::size_t>(k)];
            try {
                try {
                    r.out = run_prime(r.prime, GBMode::replay, trace, engine_threads);
                    r.kind = PrimeEvent::Kind::replay;
                } catch (const ReplayMismatch&) {
                    r.out = run_prime(r.prime, GBMode::plain, nullptr, engine_threads);
                    r.kind = PrimeEvent::Kind::plain;
                }
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        for (const auto& r : batch)
            if (r.kind == PrimeEvent::Kind::plain) ++stats_.replay_fallbacks;
    }

    /// Absorb one prime's basis, retest stabilization, and on success run
    /// the checking step. Returns true when `result` is final.
    bool process(PrimeRun& run, GBRunResult& result) {
        const PrimeField field(run.prime);
        const bool first_branch = branches_.empty();
        const AbsorbResult ar = absorb(branches_, run.out.basis, field);
        if (ar.created) {
            ++stats_.branches_created;
            if (!first_branch) trace_.reset();  // learning data no longer fits
        }

        PrimeEvent ev;
        ev.prime = run.prime;
        ev.kind = run.kind;
        ev.pairs_reduced = run.out.stats.pairs_reduced;
        ev.pairs_skipped = run.out.stats.pairs_skipped_learning;
        ev.branch = ar.branch;
        ev.new_branch = ar.created;
        stats_.events.push_back(ev);
        if (config_.verbosity > 0) {
            std::cerr << "prime " << run.prime << " ["
                      << (run.kind == PrimeEvent::Kind::learning  ? "learn"
                          : run.kind == PrimeEvent::Kind::replay ? "replay"
                                                                 : "plain")
                      << "] basis " << run.out.basis.size() << " branch " << ar.branch
                      << (ar.created ? " (new)" : "") << '\n';
        }

        ReconstructionBranch& br = branches_[ar.branch];
        if (br.last_candidate && stabilized(*br.last_candidate, run.out.basis, field)) {
            const CheckReport report = check_candidate(*br.last_candidate);
            if (report.accepted()) {
                result.basis = br.last_candidate->basis;
                result.primitive = br.last_candidate->primitive;
                result.report = report;
                result.stats = stats_;
                return true;
            }
            if (config_.verbosity > 0)
                std::cerr << "stabilized candidate rejected; continuing with more primes\n";
        }
        br.last_candidate = lift_candidate(br);
        return false;
    }

    CheckReport check_candidate(const RationalCandidate& cand) const {
        CheckMode mode = config_.check_mode;
        // small bases always get the deterministic check
        if (mode == CheckMode::probabilistic && cand.basis.size() <= config_.small_basis_threshold)
            mode = CheckMode::det_integer;
        VerifyOptions opts;
        opts.epsilon = config_.epsilon > 0 ? config_.epsilon : 1e-7;
        opts.threads = config_.workers;
        return certify(gens_, cand, mode, opts);
    }

    const RunConfig& config_;
    std::vector<IntPoly> gens_;
    PrimeSequence working_;
    std::vector<ReconstructionBranch> branches_;
    std::optional<LearningTrace> trace_;
    RunStatistics stats_;
};

}  // namespace

GBRunResult modular_gbasis(const IdealSpec& ideal, const RunConfig& config) {
    config.validate();
    ModularDriver driver(ideal, config);
    return driver.run();
}

}  // namespace modgb
