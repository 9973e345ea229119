// Kernel benchmark: the same mod-p basis runs once on the serial reference
// path (threads = 1, no OpenMP) and once per requested thread count, and the
// learning replay speedup is measured against a plain run.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "modgb/driver.hpp"
#include "modgb/systems.hpp"

using namespace modgb;

namespace {

double seconds(const std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<ModPoly> map_system(const IdealSpec& ideal, const PrimeField& field) {
    std::vector<ModPoly> out;
    for (const auto& g : normalized_generators(ideal)) out.push_back(map_mod(g, field).first);
    return out;
}

void bench_system(const std::string& name, const IdealSpec& ideal, std::uint32_t p,
                  const std::vector<int>& thread_counts) {
    const PrimeField field(p);
    const auto gens = map_system(ideal, field);

    std::printf("%-10s p=%u\n", name.c_str(), p);

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = gbasis_modp(gens, field, GBMode::plain, nullptr, 1);
    const double t_serial = seconds(t0);
    std::printf("  serial            %8.3fs  basis %zu, %llu pairs reduced\n", t_serial,
                serial.basis.size(),
                static_cast<unsigned long long>(serial.stats.pairs_reduced));

    for (const int threads : thread_counts) {
        t0 = std::chrono::steady_clock::now();
        const auto par = gbasis_modp(gens, field, GBMode::plain, nullptr, threads);
        const double t_par = seconds(t0);
        const bool same = par.basis == serial.basis;
        std::printf("  omp %-2d            %8.3fs  speedup %.2fx%s\n", threads, t_par,
                    t_serial / t_par, same ? "" : "  MISMATCH");
    }

    // learning: record once, replay on the next prime
    t0 = std::chrono::steady_clock::now();
    const auto rec = gbasis_modp(gens, field, GBMode::record, nullptr, 1);
    const double t_rec = seconds(t0);
    const std::uint32_t p2 = static_cast<std::uint32_t>(prime_near(p, PrimeDirection::below));
    const PrimeField field2(p2);
    const auto gens2 = map_system(ideal, field2);
    t0 = std::chrono::steady_clock::now();
    const auto rep = gbasis_modp(gens2, field2, GBMode::replay, &rec.trace, 1);
    const double t_rep = seconds(t0);
    std::printf("  record            %8.3fs\n", t_rec);
    std::printf("  replay (p=%u) %8.3fs  speedup %.2fx, %llu pairs skipped\n", p2, t_rep,
                t_rec / t_rep, static_cast<unsigned long long>(rep.stats.pairs_skipped_learning));
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> threads = {2, 4};
    if (argc > 1) {
        threads.clear();
        for (int a = 1; a < argc; ++a) threads.push_back(std::atoi(argv[a]));
    }

    const std::uint32_t p31 = static_cast<std::uint32_t>(prime_near(1u << 31, PrimeDirection::below));
    bench_system("katsura-7", katsura(7), p31, threads);
    bench_system("katsura-8", katsura(8), p31, threads);
    bench_system("cyclic-5", cyclic(5), p31, threads);
    bench_system("cyclic-6", cyclic(6), p31, threads);
    bench_system("alea6", alea6(), p31, threads);
    return 0;
}
