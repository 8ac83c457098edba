#pragma once

#include "comet/constructions.hpp"
#include "comet/semantics.hpp"
#include "comet/syntax.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace comet {

struct GenConfig {
    std::uint64_t seed = 1;
    std::size_t max_card = 4;    // largest |[[A]]| of a generated type
    std::size_t max_context = 2; // variables in a generated context
    std::size_t max_den = 20;    // scalar denominators
    std::size_t instances = 500; // per law
    int max_depth = 2;

    /// Throws std::invalid_argument when a bound is 0.
    void validate() const;
};

/// Random well-typed terms. Deterministic given the seed.
class Gen {
public:
    Gen(const GenConfig& cfg, std::uint64_t seed);

    const GenConfig& config() const { return cfg_; }

    std::size_t below(std::size_t n);
    bool chance(std::size_t num, std::size_t den);

    Type type();
    Type type_of_card(std::size_t card);
    /// A context of up to `max_vars` fresh variables.
    Context context(std::size_t max_vars);

    Rational rational();
    Term scalar();
    Term value(const Type& ty);

    /// avail ⊢ t : ty, using each variable of avail at most once.
    Term term(const Context& avail, const Type& ty, int depth);
    Term term(const Context& avail, const Type& ty) { return term(avail, ty, cfg_.max_depth); }
    /// x : A ⊢ p : 2
    Term predicate(const std::string& x, const Type& a);
    /// An n-test on x : A.
    std::vector<Term> ntest(const std::string& x, const Type& a, std::size_t n);

    std::string fresh(const std::string& base);

private:
    GenConfig cfg_;
    std::mt19937_64 rng_;
    std::size_t counter_ = 0;

    std::pair<Context, Context> split(const Context& avail);
};

Term value_term(const Value& v, const Type& ty);

/// A named ingredient of a law instance.
struct Piece {
    std::string label;
    Context ctx;
    Term term;
    Type type;
};

struct Sample {
    std::vector<Piece> pieces;
    std::vector<std::size_t> ints;  // extra discrete choices (arities, indices, permutations)

    const Term& operator[](std::size_t i) const { return pieces[i].term; }
    const Piece& piece(std::size_t i) const { return pieces[i]; }
    std::size_t size() const;
};

enum class Verdict { Holds, Fails, Vacuous };

struct Outcome {
    Verdict verdict = Verdict::Holds;
    std::string detail;
    std::string env;
};

struct Law {
    std::string name;
    std::string statement;
    std::function<Sample(Gen&)> generate;
    std::function<Outcome(const Sample&)> check;
};

struct Counterexample {
    std::vector<std::pair<std::string, std::string>> pieces;  // label, "ctx ⊢ term : type"
    std::string env;
    std::string detail;
    std::size_t size = 0;
};

struct LawResult {
    std::string name;
    std::string statement;
    std::size_t instances = 0;
    std::size_t vacuous = 0;
    std::size_t failures = 0;
    std::optional<Counterexample> counterexample;
};

struct LawReport {
    std::uint64_t seed = 0;
    std::vector<LawResult> results;

    std::size_t failures() const;
    bool ok() const { return failures() == 0; }
    std::string to_text() const;
};

/// Every law, in a fixed order. The constructions are consulted for the sequential product.
std::vector<Law> law_catalogue(const Constructions& cons = Constructions::standard());

/// Runs one law; failures are shrunk before being reported.
LawResult run_law(const Law& law, const GenConfig& cfg);
LawReport run_law_suite(const GenConfig& cfg, const Constructions& cons = Constructions::standard());

/// Greedy shrinking: repeatedly replaces a piece by a smaller candidate of the same type while the law still fails.
Sample shrink(const Law& law, Sample s);

}  // namespace comet
