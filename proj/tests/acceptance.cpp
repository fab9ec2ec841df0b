// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "llt/workbench.hpp"

using namespace llt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Calls f(parents) for every increasing tree on m nodes (parent[i] < i).
void for_each_increasing_tree(std::size_t m, const std::function<void(const std::vector<Element>&)>& f) {
    std::vector<Element> parent(m, 0);
    parent[0] = kNone;
    while (true) {
        f(parent);
        std::size_t i = m - 1;
        while (i >= 2 && parent[i] + 1 == i) parent[i--] = 0;
        if (i < 2) return;
        ++parent[i];
    }
}

// Rooted unlabeled trees on n nodes as level sequences (Beyer-Hedetniemi
// successor), each turned into a parent array.
void for_each_rooted_shape(std::size_t n, const std::function<void(const std::vector<Element>&)>& f) {
    std::vector<std::size_t> level(n);
    for (std::size_t i = 0; i < n; ++i) level[i] = i;
    while (true) {
        std::vector<Element> parent(n, kNone);
        std::vector<Element> last_at(n + 1, kNone);
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) parent[i] = last_at[level[i] - 1];
            last_at[level[i]] = static_cast<Element>(i);
        }
        f(parent);
        std::size_t p = n;
        while (p > 0 && level[p - 1] <= 1) --p;
        if (p == 0) return;
        --p;
        std::size_t q = p;
        while (q > 0 && level[q - 1] != level[p] - 1) --q;
        --q;
        for (std::size_t i = p; i < n; ++i) level[i] = level[i - (p - q)];
    }
}

PlainTree plain_from_parents(const std::vector<Element>& parent) {
    PlainTree t;
    t.n = parent.size();
    for (std::size_t i = 1; i < parent.size(); ++i) t.edges.emplace_back(parent[i], static_cast<std::uint32_t>(i));
    return t;
}

std::vector<Element> members_of(std::size_t m, unsigned mask) {
    std::vector<Element> s{0};
    for (std::size_t i = 1; i < m; ++i)
        if (mask >> (i - 1) & 1u) s.push_back(static_cast<Element>(i));
    return s;
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (syy == 0) return 1.0;
    return sxy * sxy / (sxx * syy);
}

// Shared by criteria 1, 3, 8 and 10.
VerifyReport g_verify;
double g_verify_seconds = 0;

// Round-profile and search-path audits over the exhaustive small-universe workload.
std::uint64_t g_small_audit_failures = 0;
std::uint64_t g_small_structures = 0;

Outcome criterion1() {
    const auto t0 = Clock::now();
    g_verify = run_verify(VerifyConfig{});
    g_verify_seconds = seconds_since(t0);
    std::ostringstream d;
    d << g_verify.traces << " traces, " << g_verify.ops << " ops, rebuild mismatches=" << g_verify.rebuild_failures
      << ", errors=" << g_verify.errors << ", " << g_verify_seconds << " s";
    const bool pass = g_verify.traces == 500 && g_verify.rebuild_failures == 0 && g_verify.errors == 0 &&
                      g_verify_seconds < 60;
    return {pass, d.str()};
}

Outcome criterion2() {
    const auto t0 = Clock::now();
    std::uint64_t checks = 0, mismatches = 0;
    for (std::size_t m = 2; m <= 8; ++m) {
        for_each_increasing_tree(m, [&](const std::vector<Element>& parent) {
            const UniverseTree u = UniverseTree::from_parents(parent);
            for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
                const auto s = members_of(m, mask);
                const HasseDiagram h(u, s);
                for (Element q = 0; q < m; ++q) {
                    const BruteEdgeOracle oracle(h, q);
                    for (Element x : s)
                        for (Element y : s) {
                            if (x == y) continue;
                            ++checks;
                            if (edge_query_fast(h, x, y, q) != oracle.answer(x, y)) ++mismatches;
                        }
                }
                // Audits on the same workload, consumed by criterion 3.
                const LineLeafTree t = LineLeafTree::build(h);
                ++g_small_structures;
                if (!t.audit().empty()) ++g_small_audit_failures;
                for (Element q = 0; q < m; ++q)
                    if (!t.search_path_violation(t.search(q, true)).empty()) ++g_small_audit_failures;
            }
        });
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << checks << " (x,y,u) checks, mismatches=" << mismatches << ", " << secs << " s";
    return {mismatches == 0 && checks > 0 && secs < 120, d.str()};
}

Outcome criterion3() {
    std::ostringstream d;
    d << "dynamic traces: lemma3=" << g_verify.lemma3_failures << " audit=" << g_verify.audit_failures
      << " lemma2=" << g_verify.lemma2_failures << "; exhaustive small: " << g_small_structures
      << " structures, failures=" << g_small_audit_failures;
    const bool pass = g_verify.lemma3_failures == 0 && g_verify.audit_failures == 0 && g_verify.lemma2_failures == 0 &&
                      g_small_audit_failures == 0 && g_small_structures > 0;
    return {pass, d.str()};
}

Outcome criterion4() {
    std::uint64_t violations = 0, worst_h = 0;
    double worst_use = 0;
    for (std::size_t n : {64u, 256u, 1024u}) {
        for (std::size_t s = 0; s < 100; ++s) {
            const UniverseTree u = gen_increasing_tree(n, derive_seed(4, n, s));
            std::vector<Element> all(n);
            std::iota(all.begin(), all.end(), 0);
            const LineLeafTree t = LineLeafTree::build(HasseDiagram(u, all));
            const Metrics m = t.metrics();
            const std::uint64_t bound = height_bound(m.shape);
            if (m.h > bound) ++violations;
            worst_h = std::max<std::uint64_t>(worst_h, m.h);
            worst_use = std::max(worst_use, double(m.h) / double(bound));
        }
    }
    std::ostringstream d;
    d << "300 trees, violations=" << violations << ", max h=" << worst_h << ", max h/bound=" << worst_use;
    return {violations == 0, d.str()};
}

Outcome criterion5() {
    std::uint64_t shapes = 0, below_lb = 0, dp_mismatch = 0, star_bad = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
        for_each_rooted_shape(n, [&](const std::vector<Element>& parent) {
            const PlainTree t = plain_from_parents(parent);
            const std::uint32_t opt = opt_height(t).height;
            ++shapes;
            if (opt < opt_lower_bound(t)) ++below_lb;
            if (n <= 10 && opt_height_enumerate(t) != opt) ++dp_mismatch;
        });
    }
    for (std::size_t k = 1; k <= 19; ++k) {
        const PlainTree star = star_tree(k);
        if (opt_height(star).height != k || opt_lower_bound(star) != k) ++star_bad;
    }
    std::ostringstream d;
    d << shapes << " shapes n<=12, below lb=" << below_lb << ", dp!=enum=" << dp_mismatch
      << ", star failures=" << star_bad;
    return {shapes > 0 && below_lb == 0 && dp_mismatch == 0 && star_bad == 0, d.str()};
}

Outcome criterion6() {
    const auto t0 = Clock::now();
    std::vector<double> ratio;
    std::ostringstream d;
    for (unsigned k = 2; k <= 6; ++k) {
        const TightFamily tf = gen_tight_family(k);
        std::vector<Element> all(tf.universe.size());
        std::iota(all.begin(), all.end(), 0);
        const HasseDiagram h(tf.universe, all);
        const LineLeafTree t = LineLeafTree::build(h);
        const PlainTree plain = plain_tree(h);
        const std::uint32_t opt = plain.n <= kOptBudget ? opt_height(plain).height : opt_lower_bound(plain);
        ratio.push_back(double(t.member_height()) / double(opt));
        d << "k=" << k << ":" << t.member_height() << "/" << opt << (plain.n <= kOptBudget ? "" : "lb") << " ";
    }
    bool increasing = true;
    for (std::size_t i = 1; i < ratio.size(); ++i) increasing = increasing && ratio[i] > ratio[i - 1];
    const double secs = seconds_since(t0);
    d << secs << " s";
    return {increasing && secs < 60, d.str()};
}

Outcome criterion7() {
    std::vector<double> mean;
    std::ostringstream d;
    for (std::size_t e = 10; e <= 14; ++e) {
        const std::size_t n = std::size_t{1} << e;
        double sum = 0;
        for (std::size_t s = 0; s < 20; ++s) {
            const UniverseTree u = gen_increasing_tree(n, derive_seed(7, n, s));
            std::vector<Element> all(n);
            std::iota(all.begin(), all.end(), 0);
            sum += double(LineLeafTree::build(HasseDiagram(u, all)).build_ops());
        }
        mean.push_back(sum / 20);
    }
    bool pass = true;
    for (std::size_t i = 1; i < mean.size(); ++i) {
        const double r = mean[i] / mean[i - 1];
        pass = pass && r <= 2.5;
        d << "C(2^" << (10 + i) << ")/C(2^" << (9 + i) << ")=" << r << " ";
    }
    return {pass, d.str()};
}

Outcome criterion8() {
    std::ostringstream d;
    d << "insert bound failures=" << g_verify.insert_cost_failures
      << " (worst use " << g_verify.worst_insert_use << "), delete bound failures="
      << g_verify.delete_cost_failures << " (worst use " << g_verify.worst_delete_use << ")";
    const bool pass = g_verify.insert_cost_failures == 0 && g_verify.delete_cost_failures == 0 &&
                      g_verify.inserts > 0 && g_verify.deletes > 0;
    return {pass, d.str()};
}

Outcome criterion9() {
    const auto t0 = Clock::now();
    ExperimentConfig c;
    c.sizes = {16, 32, 64, 128, 256, 512, 1024};
    c.samples = 100;
    c.seed = 9;
    const auto rows = run_experiment1(c);
    std::vector<double> x, h, opt;
    bool ratio_ok = true;
    std::ostringstream d;
    for (std::size_t n : c.sizes) {
        double sh = 0, so = 0, sr = 0;
        std::size_t cnt = 0;
        for (const auto& r : rows)
            if (r.n == n) {
                sh += double(r.h_llt);
                so += r.opt;
                sr += r.ratio;
                ++cnt;
            }
        x.push_back(std::log2(double(n)));
        h.push_back(sh / cnt);
        opt.push_back(so / cnt);
        ratio_ok = ratio_ok && sr / cnt <= 4.0;
        d << n << ":" << sr / cnt << " ";
    }
    const double r2h = r_squared(x, h), r2o = r_squared(x, opt);
    const double secs = seconds_since(t0);
    d << "R2(h)=" << r2h << " R2(opt)=" << r2o << " " << secs << " s";
    return {ratio_ok && r2h >= 0.9 && r2o >= 0.9 && secs < 300, d.str()};
}

Outcome criterion10() {
    const auto missing = g_verify.coverage.missing();
    std::string d = missing.empty() ? "all counters > 0" : "zero:";
    for (const auto& m : missing) d += " " + m;
    return {missing.empty(), d};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"rebuild equivalence", criterion1},   {"edge query oracle", criterion2},
        {"round and path audits", criterion3},      {"height bound", criterion4},
        {"opt oracle sanity", criterion5},     {"tight family gap", criterion6},
        {"linear construction", criterion7},   {"cost counters", criterion8},
        {"experiment 1 shape", criterion9},    {"case coverage", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
