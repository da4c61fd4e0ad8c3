// Serial against OpenMP timings for the parallel kernels. Each row also
// checks that both versions give the same answer.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cycrw/cli.hpp"
#include "cycrw/constructions.hpp"
#include "cycrw/fastconj.hpp"

using namespace cycrw;

namespace {

double best_of(int reps, const std::function<void()>& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool same) {
    std::printf("%-34s %10.2f %10.2f %8.2fx  %s\n", name, serial, parallel, serial / parallel, same ? "same" : "DIFFERENT");
}

bool same_report(const AxiomReport& a, const AxiomReport& b) {
    for (std::size_t i = 0; i < 5; ++i)
        if (a.basic[i].holds != b.basic[i].holds || a.basic[i].violations != b.basic[i].violations ||
            a.basic[i].witnesses != b.basic[i].witnesses)
            return false;
    return true;
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");

    auto S = FiniteGroupTable::symmetric(3);
    const auto A = S.generated({S.index("(12)")});
    const HnnPregroup h = hnn_pregroup(S, {A, A});
    const Pregroup& P = h.pregroup;

    AxiomReport rs, rp;
    const double as = best_of(3, [&] { rs = check_axioms_serial(P); });
    const double ap = best_of(3, [&] { rp = check_axioms(P); });
    row("axiom sweep (42 elements)", as, ap, same_report(rs, rp));

    KeyLemmaReport ks, kp;
    const double ls = best_of(3, [&] { ks = key_lemma_check_serial(P); });
    const double lp = best_of(3, [&] { kp = key_lemma_check(P); });
    bool lemma_same = true;
    for (std::size_t i = 0; i < 5; ++i) lemma_same = lemma_same && ks.parts[i].violations == kp.parts[i].violations;
    row("key-lemma sweep (42 elements)", ls, lp, lemma_same);

    const UniversalContext U(P);
    std::mt19937 rng(4);
    auto random_word = [&](std::size_t n) {
        ElementWord w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(P.letters()[rng() % P.letters().size()]);
        return w;
    };
    // Reduced words of one length, so that every conjugating element is tried.
    auto reduced_word = [&](std::size_t n) {
        for (;;) {
            ElementWord w;
            while (w.size() < n) {
                const Element x = P.letters()[rng() % P.letters().size()];
                if (w.empty() || !P.defined(w.back(), x)) w.push_back(x);
            }
            if (U.is_cyclically_reduced(w)) return w;
        }
    };
    const auto u = reduced_word(1 << 13), v = reduced_word(1 << 13);
    ConjugacyAnswer cs, cp;
    const double cts = best_of(3, [&] { cs = conjugate_linear_serial(u, v, U); });
    const double ctp = best_of(3, [&] { cp = conjugate_linear(u, v, U); });
    row("linear conjugacy, per-b trials", cts, ctp, cs.conjugate == cp.conjugate && cs.conjugator == cp.conjugator);

    std::vector<std::string> queries;
    for (int i = 0; i < 2000; ++i) {
        auto text = [&] { return P.format(random_word(1 + rng() % 12)); };
        queries.push_back(i % 2 ? "conj " + text() + " | " + text() : "nf " + text());
    }
    std::vector<cli::Outcome> bs, bp;
    const double bts = best_of(3, [&] { bs = cli::run_batch_serial(U, queries, false); });
    const double btp = best_of(3, [&] { bp = cli::run_batch(U, queries, false); });
    bool batch_same = bs.size() == bp.size();
    for (std::size_t i = 0; batch_same && i < bs.size(); ++i) batch_same = bs[i].out == bp[i].out;
    row("batch queries (2000)", bts, btp, batch_same);
    return 0;
}
