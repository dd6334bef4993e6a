#include "ucs/heuristic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace ucs {

std::optional<Feature> feature_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
        if (name == kFeatureNames[i]) return static_cast<Feature>(i);
    }
    return std::nullopt;
}

const char* feature_name(Feature f) { return kFeatureNames[static_cast<std::size_t>(f)]; }

double FeatureContext::value(Feature f) const {
    switch (f) {
        case Feature::CostRate: return cost_rate;
        case Feature::PMin: return p_min;
        case Feature::PMax: return p_max;
        case Feature::MinUp: return min_up;
        case Feature::MinDown: return min_down;
        case Feature::Demand: return demand;
        case Feature::ResidualDemand: return residual_demand;
        case Feature::HoursInState: return hours_in_state;
        case Feature::IsOn: return is_on;
        case Feature::PeriodIndex: return t;
        case Feature::PeriodCount: return T;
        case Feature::UnitCount: return N;
    }
    return 0.0;
}

int node_count(const Expr& expr) {
    int count = 1;
    for (const Expr& child : expr.children) count += node_count(child);
    return count;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw HeuristicParseError(what + " at position " + std::to_string(pos), pos);
    }

    void skip_space() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    char peek() {
        skip_space();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }

    Expr parse_expr() { return parse_cmp(); }

    Expr parse_cmp() {
        Expr lhs = parse_sum();
        skip_space();
        ExprKind op;
        if (pos + 1 < src.size() && src[pos] == '<' && src[pos + 1] == '=') {
            op = ExprKind::LessEq;
            pos += 2;
        } else if (pos + 1 < src.size() && src[pos] == '>' && src[pos + 1] == '=') {
            op = ExprKind::GreaterEq;
            pos += 2;
        } else if (pos + 1 < src.size() && src[pos] == '=' && src[pos + 1] == '=') {
            op = ExprKind::Equal;
            pos += 2;
        } else if (pos < src.size() && src[pos] == '<') {
            op = ExprKind::Less;
            ++pos;
        } else if (pos < src.size() && src[pos] == '>') {
            op = ExprKind::Greater;
            ++pos;
        } else {
            return lhs;
        }
        Expr rhs = parse_sum();
        Expr cmp;
        cmp.kind = op;
        cmp.children.push_back(std::move(lhs));
        cmp.children.push_back(std::move(rhs));
        return cmp;
    }

    Expr parse_sum() {
        Expr lhs = parse_prod();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos;
            Expr rhs = parse_prod();
            Expr node;
            node.kind = c == '+' ? ExprKind::Add : ExprKind::Sub;
            node.children.push_back(std::move(lhs));
            node.children.push_back(std::move(rhs));
            lhs = std::move(node);
        }
    }

    Expr parse_prod() {
        Expr lhs = parse_unary();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos;
            Expr rhs = parse_unary();
            Expr node;
            node.kind = c == '*' ? ExprKind::Mul : ExprKind::Div;
            node.children.push_back(std::move(lhs));
            node.children.push_back(std::move(rhs));
            lhs = std::move(node);
        }
    }

    Expr parse_unary() {
        if (consume('-')) {
            Expr node;
            node.kind = ExprKind::Negate;
            node.children.push_back(parse_unary());
            return node;
        }
        return parse_atom();
    }

    Expr parse_atom() {
        const char c = peek();
        if (c == '(') {
            ++pos;
            Expr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        skip_space();
        const char* begin = src.data() + pos;
        const char* end = src.data() + src.size();
        double value = 0.0;
        auto [next, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || next == begin) fail("malformed number");
        if (!std::isfinite(value)) fail("number out of range");
        pos += static_cast<std::size_t>(next - begin);
        Expr node;
        node.kind = ExprKind::Number;
        node.number = value;
        return node;
    }

    Expr parse_ident() {
        skip_space();
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
            ++pos;
        }
        const std::string name = src.substr(start, pos - start);

        ExprKind fn;
        std::size_t arity = 0;
        if (name == "min") {
            fn = ExprKind::Min;
            arity = 2;
        } else if (name == "max") {
            fn = ExprKind::Max;
            arity = 2;
        } else if (name == "abs") {
            fn = ExprKind::Abs;
            arity = 1;
        } else if (name == "if") {
            fn = ExprKind::If;
            arity = 3;
        } else {
            const auto feature = feature_from_name(name);
            if (!feature) {
                pos = start;
                fail("unknown identifier \"" + name + "\"");
            }
            Expr node;
            node.kind = ExprKind::FeatureRef;
            node.feature = *feature;
            return node;
        }

        expect('(');
        Expr node;
        node.kind = fn;
        node.children.push_back(parse_expr());
        while (consume(',')) node.children.push_back(parse_expr());
        expect(')');
        if (node.children.size() != arity) {
            fail(name + " takes " + std::to_string(arity) + " arguments, got " +
                 std::to_string(node.children.size()));
        }
        return node;
    }
};

}  // namespace

HeuristicProgram parse(const std::string& source) {
    Parser parser{source};
    Expr ast = parser.parse_expr();
    parser.skip_space();
    if (parser.pos != source.size()) parser.fail("trailing input");
    if (node_count(ast) > kMaxProgramNodes) {
        throw HeuristicParseError("program exceeds " + std::to_string(kMaxProgramNodes) + " nodes",
                                  0);
    }
    return HeuristicProgram{source, std::move(ast)};
}

// ---------------------------------------------------------------------------
// Pretty-printer
// ---------------------------------------------------------------------------

namespace {

// Precedence tiers of the grammar; parens are emitted only when a child
// binds looser than its parent requires.
int precedence(ExprKind kind) {
    switch (kind) {
        case ExprKind::Less:
        case ExprKind::LessEq:
        case ExprKind::Greater:
        case ExprKind::GreaterEq:
        case ExprKind::Equal: return 0;
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Negate: return 3;
        default: return 4;
    }
}

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

void print_expr(const Expr& expr, std::string& out, int parent_prec) {
    const int prec = precedence(expr.kind);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (expr.kind) {
        case ExprKind::Number:
            if (expr.number < 0.0 || std::signbit(expr.number)) {
                // negative literals re-print as unary minus
                out += '-';
                out += format_number(-expr.number);
            } else {
                out += format_number(expr.number);
            }
            break;
        case ExprKind::FeatureRef: out += feature_name(expr.feature); break;
        case ExprKind::Negate:
            out += '-';
            print_expr(expr.children[0], out, prec + 1);
            break;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
        case ExprKind::Less:
        case ExprKind::LessEq:
        case ExprKind::Greater:
        case ExprKind::GreaterEq:
        case ExprKind::Equal: {
            const char* op = nullptr;
            switch (expr.kind) {
                case ExprKind::Add: op = " + "; break;
                case ExprKind::Sub: op = " - "; break;
                case ExprKind::Mul: op = " * "; break;
                case ExprKind::Div: op = " / "; break;
                case ExprKind::Less: op = " < "; break;
                case ExprKind::LessEq: op = " <= "; break;
                case ExprKind::Greater: op = " > "; break;
                case ExprKind::GreaterEq: op = " >= "; break;
                default: op = " == "; break;
            }
            print_expr(expr.children[0], out, prec);
            out += op;
            // right operand needs tighter binding so a - (b - c) keeps parens
            print_expr(expr.children[1], out, prec + 1);
            break;
        }
        case ExprKind::Min:
        case ExprKind::Max:
        case ExprKind::Abs:
        case ExprKind::If: {
            const char* name = expr.kind == ExprKind::Min   ? "min"
                               : expr.kind == ExprKind::Max ? "max"
                               : expr.kind == ExprKind::Abs ? "abs"
                                                            : "if";
            out += name;
            out += '(';
            for (std::size_t i = 0; i < expr.children.size(); ++i) {
                if (i) out += ", ";
                print_expr(expr.children[i], out, 0);
            }
            out += ')';
            break;
        }
    }
    if (parens) out += ')';
}

}  // namespace

std::string pretty_print(const Expr& expr) {
    std::string out;
    print_expr(expr, out, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Interpreter
// ---------------------------------------------------------------------------

namespace {

double eval_node(const Expr& expr, const FeatureContext& ctx, EvalBudget& budget) {
    if (budget.remaining == 0) {
        throw HeuristicEvalError("node-evaluation budget exhausted",
                                 HeuristicEvalError::Kind::BudgetExhausted);
    }
    --budget.remaining;

    auto finite = [](double v) {
        if (!std::isfinite(v)) {
            throw HeuristicEvalError("non-finite result", HeuristicEvalError::Kind::NumericDomain);
        }
        return v;
    };

    switch (expr.kind) {
        case ExprKind::Number: return expr.number;
        case ExprKind::FeatureRef: return ctx.value(expr.feature);
        case ExprKind::Negate: return -eval_node(expr.children[0], ctx, budget);
        case ExprKind::Add:
            return finite(eval_node(expr.children[0], ctx, budget) +
                          eval_node(expr.children[1], ctx, budget));
        case ExprKind::Sub:
            return finite(eval_node(expr.children[0], ctx, budget) -
                          eval_node(expr.children[1], ctx, budget));
        case ExprKind::Mul:
            return finite(eval_node(expr.children[0], ctx, budget) *
                          eval_node(expr.children[1], ctx, budget));
        case ExprKind::Div: {
            const double num = eval_node(expr.children[0], ctx, budget);
            const double den = eval_node(expr.children[1], ctx, budget);
            if (den == 0.0) {
                throw HeuristicEvalError("division by zero",
                                         HeuristicEvalError::Kind::NumericDomain);
            }
            return finite(num / den);
        }
        case ExprKind::Less:
            return eval_node(expr.children[0], ctx, budget) <
                           eval_node(expr.children[1], ctx, budget)
                       ? 1.0
                       : 0.0;
        case ExprKind::LessEq:
            return eval_node(expr.children[0], ctx, budget) <=
                           eval_node(expr.children[1], ctx, budget)
                       ? 1.0
                       : 0.0;
        case ExprKind::Greater:
            return eval_node(expr.children[0], ctx, budget) >
                           eval_node(expr.children[1], ctx, budget)
                       ? 1.0
                       : 0.0;
        case ExprKind::GreaterEq:
            return eval_node(expr.children[0], ctx, budget) >=
                           eval_node(expr.children[1], ctx, budget)
                       ? 1.0
                       : 0.0;
        case ExprKind::Equal:
            return eval_node(expr.children[0], ctx, budget) ==
                           eval_node(expr.children[1], ctx, budget)
                       ? 1.0
                       : 0.0;
        case ExprKind::Min:
            return std::min(eval_node(expr.children[0], ctx, budget),
                            eval_node(expr.children[1], ctx, budget));
        case ExprKind::Max:
            return std::max(eval_node(expr.children[0], ctx, budget),
                            eval_node(expr.children[1], ctx, budget));
        case ExprKind::Abs: return std::abs(eval_node(expr.children[0], ctx, budget));
        case ExprKind::If:
            return eval_node(expr.children[0], ctx, budget) != 0.0
                       ? eval_node(expr.children[1], ctx, budget)
                       : eval_node(expr.children[2], ctx, budget);
    }
    return 0.0;
}

}  // namespace

double evaluate_priority(const HeuristicProgram& program, const FeatureContext& ctx,
                         EvalBudget& budget) {
    return eval_node(program.ast, ctx, budget);
}

double evaluate_priority(const HeuristicProgram& program, const FeatureContext& ctx,
                         std::uint64_t budget) {
    EvalBudget b{budget};
    return evaluate_priority(program, ctx, b);
}

// ---------------------------------------------------------------------------
// Decoder
// ---------------------------------------------------------------------------

CommitmentMatrix decode(const UcInstance& instance, const HeuristicProgram& program,
                        std::uint64_t budget) {
    const int n = instance.unit_count();
    const int horizon = instance.period_count();
    CommitmentMatrix commitment(n, horizon);
    EvalBudget shared_budget{budget};

    // state/duration as of the start of the current period
    std::vector<char> state(n);
    std::vector<int> duration(n);
    for (int i = 0; i < n; ++i) {
        state[i] = instance.units[i].initial_state ? 1 : 0;
        duration[i] = instance.units[i].initial_duration;
    }

    std::vector<int> free_units;
    std::vector<double> score(n, 0.0);
    free_units.reserve(n);

    for (int t = 0; t < horizon; ++t) {
        free_units.clear();
        double committed_capacity = 0.0;
        for (int i = 0; i < n; ++i) {
            const UnitSpec& u = instance.units[i];
            const bool locked =
                state[i] ? duration[i] < u.min_up : duration[i] < u.min_down;
            if (locked) {
                commitment.at(i, t) = state[i];
                if (state[i]) committed_capacity += u.p_max;
            } else {
                free_units.push_back(i);
            }
        }

        const double residual = instance.demand[t] - committed_capacity;
        for (int i : free_units) {
            const UnitSpec& u = instance.units[i];
            FeatureContext ctx;
            ctx.cost_rate = u.cost_rate;
            ctx.p_min = u.p_min;
            ctx.p_max = u.p_max;
            ctx.min_up = u.min_up;
            ctx.min_down = u.min_down;
            ctx.demand = instance.demand[t];
            ctx.residual_demand = residual;
            ctx.hours_in_state = duration[i];
            ctx.is_on = state[i] ? 1.0 : 0.0;
            ctx.t = t;
            ctx.T = horizon;
            ctx.N = n;
            score[i] = evaluate_priority(program, ctx, shared_budget);
        }
        std::sort(free_units.begin(), free_units.end(), [&](int a, int b) {
            return score[a] != score[b] ? score[a] > score[b] : a < b;
        });
        for (int i : free_units) {
            if (committed_capacity >= instance.demand[t]) break;
            commitment.at(i, t) = 1;
            committed_capacity += instance.units[i].p_max;
        }

        for (int i = 0; i < n; ++i) {
            const char decided = commitment.at(i, t);
            if (decided == state[i]) {
                ++duration[i];
            } else {
                state[i] = decided;
                duration[i] = 1;
            }
        }
    }
    return commitment;
}

}  // namespace ucs
