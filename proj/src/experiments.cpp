#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <random>

#include "llt/workbench.hpp"

namespace llt {

void validate(const ExperimentConfig& c) {
    if (c.sizes.empty()) throw Error(ErrorCode::Config, "no sizes given");
    for (std::size_t n : c.sizes)
        if (n < 2) throw Error(ErrorCode::Config, "sizes must be at least 2");
    if (c.samples < 1) throw Error(ErrorCode::Config, "samples must be at least 1");
}

ExperimentRow measure(const HasseDiagram& h, std::size_t sample, bool double_count) {
    ExperimentRow row;
    row.n = h.size();
    row.sample = sample;
    const LineLeafTree t = LineLeafTree::build(h);
    row.h_llt = t.member_height() * (double_count ? 2u : 1u);
    const PlainTree plain = plain_tree(h);
    if (plain.n <= kOptBudget) {
        row.opt = opt_height(plain).height;
    } else {
        row.opt = opt_lower_bound(plain);
        row.opt_is_lb = true;
    }
    row.ratio = row.opt == 0 ? 0.0 : double(row.h_llt) / double(row.opt);
    return row;
}

std::vector<ExperimentRow> run_experiment1(const ExperimentConfig& c) {
    validate(c);
    std::vector<ExperimentRow> rows;
    for (std::size_t n : c.sizes) {
        for (std::size_t s = 0; s < c.samples; ++s) {
            const UniverseTree u = gen_increasing_tree(n, derive_seed(c.seed, n, s));
            std::vector<Element> all(n);
            std::iota(all.begin(), all.end(), 0);
            rows.push_back(measure(HasseDiagram(u, all), s, c.double_count));
        }
    }
    return rows;
}

std::vector<ExperimentRow> run_experiment2(const ExperimentConfig& c, const UniverseTree& universe) {
    validate(c);
    std::vector<ExperimentRow> rows;
    std::vector<Element> pool(universe.size() - 1);
    std::iota(pool.begin(), pool.end(), 1);
    for (std::size_t n : c.sizes) {
        const std::size_t size = std::min(n, universe.size());
        for (std::size_t s = 0; s < c.samples; ++s) {
            std::mt19937_64 rng(derive_seed(c.seed, size, s));
            std::vector<Element> members;
            std::sample(pool.begin(), pool.end(), std::back_inserter(members), size - 1, rng);
            members.push_back(universe.root());
            rows.push_back(measure(HasseDiagram(universe, members), s, c.double_count));
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    out << "n,sample,h_llt,opt,ratio\n";
    for (const ExperimentRow& r : rows) {
        out << r.n << ',' << r.sample << ',' << r.h_llt << ',' << r.opt << (r.opt_is_lb ? "lb" : "") << ','
            << r.ratio << '\n';
    }
}

std::vector<BenchRow> run_bench(const ExperimentConfig& c) {
    validate(c);
    using clock = std::chrono::steady_clock;
    auto since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::micro>(clock::now() - t0).count();
    };
    std::vector<BenchRow> rows;
    for (std::size_t n : c.sizes) {
        for (std::size_t s = 0; s < c.samples; ++s) {
            BenchRow row;
            row.n = n;
            row.sample = s;
            const UniverseTree u = gen_increasing_tree(n, derive_seed(c.seed, n, s));
            std::vector<Element> order(n - 1);
            std::iota(order.begin(), order.end(), 1);
            std::mt19937_64 rng(derive_seed(c.seed, n, s + 1000003));
            std::shuffle(order.begin(), order.end(), rng);

            std::vector<Element> all(order);
            all.push_back(0);
            const HasseDiagram full(u, all);
            auto t0 = clock::now();
            const LineLeafTree built = LineLeafTree::build(full);
            row.build_ms = since(t0) / 1000.0;
            row.build_ops = built.build_ops();
            row.height = built.height();
            row.rounds = built.rounds();

            LineLeafTree t(u);
            t0 = clock::now();
            for (Element x : order) t.insert(x);
            row.insert_us = since(t0) / double(order.size());
            t0 = clock::now();
            std::size_t hits = 0;
            for (Element x = 0; x < n; ++x) hits += t.contains(x);
            row.search_us = since(t0) / double(n);
            if (hits != n) throw Error(ErrorCode::StructuralCorruption, "bench: member lost");
            std::shuffle(order.begin(), order.end(), rng);
            t0 = clock::now();
            for (Element x : order) t.erase(x);
            row.delete_us = since(t0) / double(order.size());
            rows.push_back(row);
        }
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "n,sample,build_ops,build_ms,insert_us,search_us,delete_us,height,rounds\n";
    for (const BenchRow& r : rows) {
        out << r.n << ',' << r.sample << ',' << r.build_ops << ',' << r.build_ms << ',' << r.insert_us << ','
            << r.search_us << ',' << r.delete_us << ',' << r.height << ',' << r.rounds << '\n';
    }
}

}  // namespace llt
