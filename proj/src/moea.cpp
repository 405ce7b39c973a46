#include "cusum/moea.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cusum::moea {

void MoeaConfig::validate() const {
    if (population_size < 4 || population_size % 2 != 0) {
        throw std::invalid_argument("population_size must be even and >= 4");
    }
    if (generations < 1) {
        throw std::invalid_argument("generations must be >= 1");
    }
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!probability(crossover_probability) || !probability(mutation_probability_per_gene)) {
        throw std::invalid_argument("crossover/mutation probabilities must lie in [0, 1]");
    }
    if (!(crossover_distribution_index > 0.0) || !(mutation_distribution_index > 0.0)) {
        throw std::invalid_argument("distribution indices must be positive");
    }
}

bool dominates(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    bool strictly_better = false;
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] > b[m]) {
            return false;
        }
        if (a[m] < b[m]) {
            strictly_better = true;
        }
    }
    return strictly_better;
}

bool constrained_dominates(const Fitness& a, const Fitness& b) {
    const bool fa = a.feasible();
    const bool fb = b.feasible();
    if (fa && fb) {
        return dominates(a.objectives, b.objectives);
    }
    if (fa != fb) {
        return fa;
    }
    return a.violation < b.violation;
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::span<Individual> population) {
    const std::size_t size = population.size();
    std::vector<std::vector<std::size_t>> fronts;
    if (size == 0) {
        return fronts;
    }

    std::vector<std::vector<std::size_t>> dominated_by_me(size);
    std::vector<std::size_t> domination_count(size, 0);
    std::vector<std::size_t> current;

    for (std::size_t p = 0; p < size; ++p) {
        for (std::size_t q = p + 1; q < size; ++q) {
            if (constrained_dominates(population[p].fitness, population[q].fitness)) {
                dominated_by_me[p].push_back(q);
                ++domination_count[q];
            } else if (constrained_dominates(population[q].fitness, population[p].fitness)) {
                dominated_by_me[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < size; ++p) {
        if (domination_count[p] == 0) {
            current.push_back(p);
        }
    }

    while (!current.empty()) {
        const std::size_t rank = fronts.size();
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            population[p].rank = rank;
            for (std::size_t q : dominated_by_me[p]) {
                if (--domination_count[q] == 0) {
                    next.push_back(q);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

void crowding_distance(std::span<Individual> population, std::span<const std::size_t> front) {
    if (front.empty()) {
        return;
    }
    for (std::size_t i : front) {
        population[i].crowding = 0.0;
    }
    if (front.size() <= 2) {
        for (std::size_t i : front) {
            population[i].crowding = kInfiniteCrowding;
        }
        return;
    }

    std::vector<std::size_t> order(front.begin(), front.end());
    constexpr std::size_t objective_count = std::tuple_size_v<decltype(Fitness::objectives)>;
    for (std::size_t m = 0; m < objective_count; ++m) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return population[a].fitness.objectives[m] < population[b].fitness.objectives[m];
        });
        const double lo = population[order.front()].fitness.objectives[m];
        const double hi = population[order.back()].fitness.objectives[m];
        population[order.front()].crowding = kInfiniteCrowding;
        population[order.back()].crowding = kInfiniteCrowding;
        const double range = hi - lo;
        if (!(range > 0.0)) {
            continue;
        }
        for (std::size_t k = 1; k + 1 < order.size(); ++k) {
            auto& member = population[order[k]];
            const double gap = population[order[k + 1]].fitness.objectives[m] -
                               population[order[k - 1]].fitness.objectives[m];
            member.crowding += gap / range; // inf stays inf
        }
    }
}

const Individual& crowded_compare(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) {
        return a.rank < b.rank ? a : b;
    }
    if (b.crowding > a.crowding) {
        return b;
    }
    return a;
}

namespace {

double sbx_spread_factor(double beta, double eta, double u) {
    const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
    if (u <= 1.0 / alpha) {
        return std::pow(u * alpha, 1.0 / (eta + 1.0));
    }
    return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

} // namespace

void sbx_crossover(std::span<const double> parent1, std::span<const double> parent2,
                   std::span<double> child1, std::span<double> child2,
                   std::span<const GeneBounds> bounds, double eta, Rng& rng) {
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        child1[i] = parent1[i];
        child2[i] = parent2[i];
        if (!rng.bernoulli(0.5)) {
            continue;
        }
        if (std::abs(parent1[i] - parent2[i]) <= 1e-14) {
            continue;
        }
        const double lo = bounds[i].lower;
        const double hi = bounds[i].upper;
        const double y1 = std::min(parent1[i], parent2[i]);
        const double y2 = std::max(parent1[i], parent2[i]);
        const double u = rng.uniform();

        const double beta_low = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
        const double c1 = 0.5 * ((y1 + y2) - sbx_spread_factor(beta_low, eta, u) * (y2 - y1));
        const double beta_high = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
        const double c2 = 0.5 * ((y1 + y2) + sbx_spread_factor(beta_high, eta, u) * (y2 - y1));

        const double a = std::clamp(c1, lo, hi);
        const double b = std::clamp(c2, lo, hi);
        if (rng.bernoulli(0.5)) {
            child1[i] = b;
            child2[i] = a;
        } else {
            child1[i] = a;
            child2[i] = b;
        }
    }
}

void polynomial_mutation(std::span<double> genes, std::span<const GeneBounds> bounds,
                         double probability, double eta, Rng& rng) {
    const double power = 1.0 / (eta + 1.0);
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (!rng.bernoulli(probability)) {
            continue;
        }
        const double lo = bounds[i].lower;
        const double hi = bounds[i].upper;
        const double width = hi - lo;
        const double y = genes[i];
        const double delta1 = (y - lo) / width;
        const double delta2 = (hi - y) / width;
        const double u = rng.uniform();
        double deltaq = 0.0;
        if (u <= 0.5) {
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
            deltaq = std::pow(val, power) - 1.0;
        } else {
            const double val =
                2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
            deltaq = 1.0 - std::pow(val, power);
        }
        genes[i] = std::clamp(y + deltaq * width, lo, hi);
    }
}

namespace {

// Ranks and crowds `pool`, then keeps `target` members front by front. The
// front that does not fit is pruned one member at a time: drop the least
// crowded, recompute crowding over the rest, repeat. Cutting the sorted list
// in one go can remove both neighbours of a gap and open a hole in the front.
std::vector<Individual> select_survivors(std::vector<Individual> pool, std::size_t target) {
    const auto fronts = fast_non_dominated_sort(pool);
    std::vector<Individual> next;
    next.reserve(target);
    for (const auto& front : fronts) {
        crowding_distance(pool, front);
        if (next.size() + front.size() <= target) {
            for (std::size_t i : front) {
                next.push_back(std::move(pool[i]));
            }
        } else {
            std::vector<std::size_t> kept(front.begin(), front.end());
            while (next.size() + kept.size() > target) {
                // Ties go to the later member so earlier indices are kept.
                std::size_t worst = 0;
                for (std::size_t k = 1; k < kept.size(); ++k) {
                    if (pool[kept[k]].crowding <= pool[kept[worst]].crowding) {
                        worst = k;
                    }
                }
                kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(worst));
                crowding_distance(pool, kept);
            }
            for (std::size_t i : kept) {
                next.push_back(std::move(pool[i]));
            }
        }
        if (next.size() == target) {
            break;
        }
    }
    return next;
}

const Individual& tournament(std::span<const Individual> population, Rng& rng) {
    const auto& a = population[rng.index(population.size())];
    const auto& b = population[rng.index(population.size())];
    return crowded_compare(a, b);
}

} // namespace

std::vector<Individual> evolve(const FitnessFunction& fitness, std::span<const GeneBounds> bounds,
                               const MoeaConfig& config, const GenerationObserver& observer) {
    config.validate();
    if (bounds.empty()) {
        throw std::invalid_argument("at least one gene is required");
    }
    for (const auto& b : bounds) {
        if (!(b.lower < b.upper)) {
            throw std::invalid_argument("gene bounds must satisfy lower < upper");
        }
    }

    const std::size_t n = config.population_size;
    const std::size_t dim = bounds.size();
    Rng rng(config.rng_seed);

    std::vector<Individual> population(n);
    for (auto& ind : population) {
        ind.genes.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            ind.genes[i] = rng.uniform(bounds[i].lower, bounds[i].upper);
        }
        ind.fitness = fitness(ind.genes);
    }
    population = select_survivors(std::move(population), n);
    if (observer) {
        observer(0, population);
    }

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        std::vector<Individual> pool = population;
        pool.reserve(2 * n);
        for (std::size_t made = 0; made < n; made += 2) {
            const auto& p1 = tournament(population, rng);
            const auto& p2 = tournament(population, rng);
            Individual c1;
            Individual c2;
            c1.genes.resize(dim);
            c2.genes.resize(dim);
            if (rng.bernoulli(config.crossover_probability)) {
                sbx_crossover(p1.genes, p2.genes, c1.genes, c2.genes, bounds,
                              config.crossover_distribution_index, rng);
            } else {
                c1.genes = p1.genes;
                c2.genes = p2.genes;
            }
            polynomial_mutation(c1.genes, bounds, config.mutation_probability_per_gene,
                                config.mutation_distribution_index, rng);
            polynomial_mutation(c2.genes, bounds, config.mutation_probability_per_gene,
                                config.mutation_distribution_index, rng);
            pool.push_back(std::move(c1));
            pool.push_back(std::move(c2));
        }
        for (std::size_t i = n; i < pool.size(); ++i) {
            pool[i].fitness = fitness(pool[i].genes);
        }
        population = select_survivors(std::move(pool), n);
        if (observer) {
            observer(gen, population);
        }
    }

    std::vector<Individual> best;
    for (const auto& ind : population) {
        if (ind.rank == 0) {
            best.push_back(ind);
        }
    }
    return best;
}

} // namespace cusum::moea
