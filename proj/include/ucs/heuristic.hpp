#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucs/instance.hpp"

namespace ucs {

/* Priority-rule expression grammar:
 *   expr  := cmp
 *   cmp   := sum (("<" | "<=" | ">" | ">=" | "==") sum)?
 *   sum   := prod (("+" | "-") prod)*
 *   prod  := unary (("*" | "/") unary)*
 *   unary := "-" unary | atom
 *   atom  := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
 * IDENT is a feature name or one of min/max/abs/if. Comparisons yield
 * 1 or 0; if(cond, a, b) picks a when cond is nonzero.
 */

// Per-(unit, period) snapshot the decoder exposes to programs.
enum class Feature : std::uint8_t {
    CostRate,
    PMin,
    PMax,
    MinUp,
    MinDown,
    Demand,
    ResidualDemand,
    HoursInState,
    IsOn,
    PeriodIndex,   // t
    PeriodCount,   // T
    UnitCount,     // N
};

inline constexpr std::array<const char*, 12> kFeatureNames = {
    "cost_rate", "p_min",           "p_max",          "min_up", "min_down", "demand",
    "residual_demand", "hours_in_state", "is_on",  "t",      "T",        "N"};

std::optional<Feature> feature_from_name(const std::string& name);
const char* feature_name(Feature f);

struct FeatureContext {
    double cost_rate = 0.0;
    double p_min = 0.0;
    double p_max = 0.0;
    double min_up = 0.0;
    double min_down = 0.0;
    double demand = 0.0;
    double residual_demand = 0.0;  // demand minus capacity already committed this period
    double hours_in_state = 0.0;   // consecutive periods in the current state, incl. initial run
    double is_on = 0.0;            // 1/0 state carried from the previous period
    double t = 0.0;
    double T = 0.0;
    double N = 0.0;

    double value(Feature f) const;
};

enum class ExprKind : std::uint8_t {
    Number,
    FeatureRef,
    Negate,
    Add, Sub, Mul, Div,
    Less, LessEq, Greater, GreaterEq, Equal,
    Min, Max, Abs, If,
};

// Expression tree with value semantics; children order is operand order.
struct Expr {
    ExprKind kind = ExprKind::Number;
    double number = 0.0;
    Feature feature = Feature::CostRate;
    std::vector<Expr> children;
};

int node_count(const Expr& expr);

inline constexpr int kMaxProgramNodes = 512;
inline constexpr std::uint64_t kDefaultDecodeBudget = 1'000'000;

struct HeuristicProgram {
    std::string source;
    Expr ast;
};

class HeuristicParseError : public std::runtime_error {
public:
    HeuristicParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Division by zero, a non-finite intermediate, or an exhausted node budget.
class HeuristicEvalError : public std::runtime_error {
public:
    enum class Kind { NumericDomain, BudgetExhausted };
    HeuristicEvalError(const std::string& what, Kind kind)
        : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Throws HeuristicParseError on malformed input, unknown identifiers,
// or programs above kMaxProgramNodes.
HeuristicProgram parse(const std::string& source);

// Canonical rendering; reparsing it yields an equal tree. Also the
// normalization key for program deduplication.
std::string pretty_print(const Expr& expr);

struct EvalBudget {
    std::uint64_t remaining = kDefaultDecodeBudget;
};

// Evaluates the program; each visited node costs one budget unit.
double evaluate_priority(const HeuristicProgram& program, const FeatureContext& ctx,
                         EvalBudget& budget);
double evaluate_priority(const HeuristicProgram& program, const FeatureContext& ctx,
                         std::uint64_t budget = kDefaultDecodeBudget);

// Greedy per-period decoding: units still locked by min_up/min_down keep
// their state, free units are committed in descending priority order
// (ties by ascending id) until the committed capacity covers demand.
// Program evaluation errors propagate; the budget spans the whole decode.
CommitmentMatrix decode(const UcInstance& instance, const HeuristicProgram& program,
                        std::uint64_t budget = kDefaultDecodeBudget);

}  // namespace ucs
