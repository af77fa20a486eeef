#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prym/covers.hpp"
#include "prym/mobius.hpp"
#include "prym/mult.hpp"
#include "prym/rational.hpp"
#include "prym/solver.hpp"

namespace prym {

/// One isomorphism class of pairs (C, eta) with fixed Prym curve E.
struct OrbitClassReport {
    Poly rep_a_minpoly, rep_b_minpoly; // over F_p
    FieldElement rep_a, rep_b;         // in the block compositum
    int orbit_size = 0;
    int stabilizer = 0;
    int aut = 0; // 2 * stabilizer (the hyperelliptic involution doubles it)
    int a_number = 0;
    int multiplicity = 0;
    int galois_length = 0;
    Rat contribution; // multiplicity / aut
};

struct CensusBlock {
    FieldElement j; // in F_{p^2}
    int aut_order_e = 0;
    Poly model;
    int group_order = 0;
    std::vector<OrbitClassReport> classes;
    Rat subtotal;
};

struct CensusReport {
    std::int64_t p = 0;
    std::uint64_t seed = 0;
    std::vector<CensusBlock> blocks;
    Rat smooth_total, reducible_total, grand_total;
    Rat formula_smooth_value, formula_reducible_value, formula_total_value;
    Rat mass; // enumerated supersingular mass
    bool matches = false;
};

// (p-3)(p-1)^2(p+1)/384
Rat formula_smooth(std::int64_t p);
// (p+1)(p-1)^2/192
Rat formula_reducible(std::int64_t p);
// (p-1)^2(p^2-1)/384
Rat formula_total(std::int64_t p);

// Full verification for one prime: every supersingular block solved, orbits
// weighted by multiplicity / automorphisms, reducible contribution added.
CensusReport run_census(std::int64_t p, std::uint64_t seed, std::int64_t max_p = 47);

// One block for an explicit supersingular cubic model (cross-checks against
// Mobius-equivalent models of the same j).
CensusBlock run_census_block(const Poly& model, std::uint64_t seed);

enum class ReportFormat { Text, Json, Csv };
std::string serialize_report(const CensusReport& r, ReportFormat f);

} // namespace prym
