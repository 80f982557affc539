#include "tlplan/ltl.hpp"

#include <cctype>
#include <charconv>
#include <functional>

namespace tlplan {

std::string Atom::str() const
{
    if (waypoint > 0)
        return robot + "@" + std::to_string(waypoint);
    return robot;
}

struct Formula::Node {
    Op op;
    Atom atom;
    Formula lhs;
    Formula rhs;
};

namespace {

const std::shared_ptr<const Formula>& empty_child()
{
    static const auto f = std::make_shared<const Formula>();
    return f;
}

}  // namespace

Formula Formula::make_leaf(Op op, Atom a)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->atom = std::move(a);
    return Formula(std::move(n));
}

Formula Formula::make(Op op, Atom a, Formula l, Formula r)
{
    auto n = std::make_shared<Node>(Node{op, std::move(a), std::move(l), std::move(r)});
    return Formula(std::move(n));
}

// The default formula is `true`. Children of leaves hold a null node, which
// keeps construction from recursing.
Formula::Formula() : node_(nullptr) {}

Formula Formula::truth() { return make_leaf(Op::True, {}); }
Formula Formula::falsity() { return make_leaf(Op::False, {}); }
Formula Formula::atom(Atom a) { return make_leaf(Op::Atom, std::move(a)); }
Formula Formula::negation(Formula f) { return make(Op::Not, {}, std::move(f), {}); }
Formula Formula::conj(Formula l, Formula r) { return make(Op::And, {}, std::move(l), std::move(r)); }
Formula Formula::disj(Formula l, Formula r) { return make(Op::Or, {}, std::move(l), std::move(r)); }
Formula Formula::implies(Formula l, Formula r) { return make(Op::Implies, {}, std::move(l), std::move(r)); }
Formula Formula::next(Formula f) { return make(Op::Next, {}, std::move(f), {}); }
Formula Formula::until(Formula l, Formula r) { return make(Op::Until, {}, std::move(l), std::move(r)); }
Formula Formula::release(Formula l, Formula r) { return make(Op::Release, {}, std::move(l), std::move(r)); }
Formula Formula::eventually(Formula f) { return make(Op::Eventually, {}, std::move(f), {}); }
Formula Formula::always(Formula f) { return make(Op::Always, {}, std::move(f), {}); }

Op Formula::op() const { return node_ ? node_->op : Op::True; }

const Atom& Formula::atom_value() const
{
    static const Atom none{};
    return node_ ? node_->atom : none;
}

const Formula& Formula::lhs() const { return node_ ? node_->lhs : *empty_child(); }
const Formula& Formula::rhs() const { return node_ ? node_->rhs : *empty_child(); }

bool Formula::is_unary() const
{
    switch (op()) {
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Always:
        return true;
    default:
        return false;
    }
}

bool Formula::is_binary() const
{
    switch (op()) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Until:
    case Op::Release:
        return true;
    default:
        return false;
    }
}

bool Formula::operator==(const Formula& other) const
{
    if (node_ == other.node_)
        return true;
    if (op() != other.op())
        return false;
    if (op() == Op::Atom)
        return atom_value() == other.atom_value();
    if (is_unary())
        return lhs() == other.lhs();
    if (is_binary())
        return lhs() == other.lhs() && rhs() == other.rhs();
    return true;
}

namespace {

const char* op_token(Op op)
{
    switch (op) {
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Next: return "X";
    case Op::Until: return "U";
    case Op::Release: return "R";
    case Op::Eventually: return "F";
    case Op::Always: return "G";
    default: return "";
    }
}

void print(const Formula& f, std::string& out)
{
    switch (f.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += f.atom_value().str(); return;
    default: break;
    }
    out += '(';
    if (f.is_unary()) {
        out += op_token(f.op());
        if (f.op() != Op::Not)
            out += ' ';
        print(f.lhs(), out);
    } else {
        print(f.lhs(), out);
        out += ' ';
        out += op_token(f.op());
        out += ' ';
        print(f.rhs(), out);
    }
    out += ')';
}

}  // namespace

std::string Formula::str() const
{
    std::string out;
    print(*this, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line), column_(column)
{
}

namespace {

enum class Tok { End, LParen, RParen, Not, And, Or, Implies, Next, Until, Release, Eventually, Always, True, False, Ident };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= text_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.text = identifier();
                t.kind = keyword(t.text);
                out.push_back(std::move(t));
                continue;
            }
            switch (c) {
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '!': t.kind = Tok::Not; break;
            case '&':
            case '|':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == c)
                    throw ParseError(std::string("unknown operator token '") + c + c + "'", t.line, t.column);
                t.kind = c == '&' ? Tok::And : Tok::Or;
                break;
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                    t.kind = Tok::Implies;
                    advance();
                    break;
                }
                [[fallthrough]];
            default: {
                std::string bad(1, c);
                while (pos_ + bad.size() < text_.size()) {
                    const char n = text_[pos_ + bad.size()];
                    if (std::isspace(static_cast<unsigned char>(n)) || std::isalnum(static_cast<unsigned char>(n)) || n == '(' || n == ')')
                        break;
                    bad += n;
                }
                throw ParseError("unknown operator token '" + bad + "'", t.line, t.column);
            }
            }
            advance();
            t.text = op_token_text(t.kind);
            out.push_back(std::move(t));
        }
    }

private:
    static const char* op_token_text(Tok k)
    {
        switch (k) {
        case Tok::LParen: return "(";
        case Tok::RParen: return ")";
        case Tok::Not: return "!";
        case Tok::And: return "&";
        case Tok::Or: return "|";
        case Tok::Implies: return "->";
        default: return "";
        }
    }

    static Tok keyword(const std::string& s)
    {
        if (s == "X") return Tok::Next;
        if (s == "U") return Tok::Until;
        if (s == "R") return Tok::Release;
        if (s == "F") return Tok::Eventually;
        if (s == "G") return Tok::Always;
        if (s == "true") return Tok::True;
        if (s == "false") return Tok::False;
        return Tok::Ident;
    }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    std::string identifier()
    {
        std::string s;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
                s += c;
                advance();
            } else {
                break;
            }
        }
        return s;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula run()
    {
        Formula f = implication();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg, peek().line, peek().column);
    }

    Formula implication()
    {
        Formula l = disjunction();
        if (peek().kind == Tok::Implies) {
            take();
            return Formula::implies(l, implication());
        }
        return l;
    }

    Formula disjunction()
    {
        Formula l = conjunction();
        while (peek().kind == Tok::Or) {
            take();
            l = Formula::disj(l, conjunction());
        }
        return l;
    }

    Formula conjunction()
    {
        Formula l = binary_temporal();
        while (peek().kind == Tok::And) {
            take();
            l = Formula::conj(l, binary_temporal());
        }
        return l;
    }

    Formula binary_temporal()
    {
        Formula l = unary();
        if (peek().kind == Tok::Until) {
            take();
            return Formula::until(l, binary_temporal());
        }
        if (peek().kind == Tok::Release) {
            take();
            return Formula::release(l, binary_temporal());
        }
        return l;
    }

    Formula unary()
    {
        switch (peek().kind) {
        case Tok::Not: take(); return Formula::negation(unary());
        case Tok::Next: take(); return Formula::next(unary());
        case Tok::Eventually: take(); return Formula::eventually(unary());
        case Tok::Always: take(); return Formula::always(unary());
        default: return primary();
        }
    }

    Formula primary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::True: take(); return Formula::truth();
        case Tok::False: take(); return Formula::falsity();
        case Tok::LParen: {
            take();
            Formula f = implication();
            if (peek().kind != Tok::RParen)
                fail("expected ')'");
            take();
            return f;
        }
        case Tok::Ident: return Formula::atom(atom_of(take()));
        case Tok::End: fail("unexpected end of input");
        default: fail("unexpected '" + t.text + "'");
        }
    }

    static Atom atom_of(const Token& t)
    {
        const auto at = t.text.find('@');
        if (at == std::string::npos)
            return Atom{t.text, 0};
        const std::string name = t.text.substr(0, at);
        const std::string index = t.text.substr(at + 1);
        int wp = 0;
        const auto [ptr, ec] = std::from_chars(index.data(), index.data() + index.size(), wp);
        if (name.empty() || index.empty() || ec != std::errc{} || ptr != index.data() + index.size() || wp < 1)
            throw ParseError("malformed atom '" + t.text + "'", t.line, t.column);
        if (name == "obs")
            throw ParseError("'obs' is reserved and takes no index", t.line, t.column);
        return Atom{name, wp};
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text)
{
    return Parser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// NNF

namespace {

Formula nnf(const Formula& f, bool negate)
{
    switch (f.op()) {
    case Op::True: return negate ? Formula::falsity() : Formula::truth();
    case Op::False: return negate ? Formula::truth() : Formula::falsity();
    case Op::Atom: return negate ? Formula::negation(f) : f;
    case Op::Not: return nnf(f.lhs(), !negate);
    case Op::And:
        return negate ? Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                      : Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Or:
        return negate ? Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                      : Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Implies:
        return negate ? Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), true))
                      : Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case Op::Next: return Formula::next(nnf(f.lhs(), negate));
    case Op::Until:
        return negate ? Formula::release(nnf(f.lhs(), true), nnf(f.rhs(), true))
                      : Formula::until(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Release:
        return negate ? Formula::until(nnf(f.lhs(), true), nnf(f.rhs(), true))
                      : Formula::release(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Eventually:
        // F a == true U a
        return negate ? Formula::release(Formula::falsity(), nnf(f.lhs(), true))
                      : Formula::until(Formula::truth(), nnf(f.lhs(), false));
    case Op::Always:
        // G a == false R a
        return negate ? Formula::until(Formula::truth(), nnf(f.lhs(), true))
                      : Formula::release(Formula::falsity(), nnf(f.lhs(), false));
    }
    return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f)
{
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
        return true;
    case Op::Not:
        return f.lhs().op() == Op::Atom;
    case Op::Implies:
    case Op::Eventually:
    case Op::Always:
        return false;
    case Op::Next:
        return is_nnf(f.lhs());
    default:
        return is_nnf(f.lhs()) && is_nnf(f.rhs());
    }
}

std::set<Atom> atoms(const Formula& f)
{
    std::set<Atom> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g.op() == Op::Atom) {
            out.insert(g.atom_value());
        } else if (g.is_unary()) {
            walk(g.lhs());
        } else if (g.is_binary()) {
            walk(g.lhs());
            walk(g.rhs());
        }
    };
    walk(f);
    return out;
}

// ---------------------------------------------------------------------------
// Lasso evaluation

const Letter& LassoWord::at(std::size_t pos) const
{
    return pos < prefix.size() ? prefix[pos] : period[pos - prefix.size()];
}

std::size_t LassoWord::successor(std::size_t pos) const
{
    return pos + 1 < size() ? pos + 1 : prefix.size();
}

namespace {

using Truth = std::vector<char>;

// Least (until) or greatest (release) fixpoint of
//   v[i] = now[i] op (keep[i] op' v[succ(i)]).
Truth fixpoint(const LassoWord& w, const Truth& keep, const Truth& now, bool least)
{
    const std::size_t n = w.size();
    Truth v(n, least ? 0 : 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = n; k-- > 0;) {
            const char next = v[w.successor(k)];
            const char val = least ? (now[k] || (keep[k] && next)) : (now[k] && (keep[k] || next));
            if (val != v[k]) {
                v[k] = val;
                changed = true;
            }
        }
    }
    return v;
}

Truth evaluate(const Formula& f, const LassoWord& w)
{
    const std::size_t n = w.size();
    Truth out(n, 0);
    switch (f.op()) {
    case Op::True:
        out.assign(n, 1);
        break;
    case Op::False:
        break;
    case Op::Atom:
        for (std::size_t k = 0; k < n; ++k)
            out[k] = w.at(k).count(f.atom_value()) ? 1 : 0;
        break;
    case Op::Not: {
        const Truth a = evaluate(f.lhs(), w);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = !a[k];
        break;
    }
    case Op::And:
    case Op::Or:
    case Op::Implies: {
        const Truth a = evaluate(f.lhs(), w);
        const Truth b = evaluate(f.rhs(), w);
        for (std::size_t k = 0; k < n; ++k) {
            if (f.op() == Op::And)
                out[k] = a[k] && b[k];
            else if (f.op() == Op::Or)
                out[k] = a[k] || b[k];
            else
                out[k] = !a[k] || b[k];
        }
        break;
    }
    case Op::Next: {
        const Truth a = evaluate(f.lhs(), w);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = a[w.successor(k)];
        break;
    }
    case Op::Until:
        out = fixpoint(w, evaluate(f.lhs(), w), evaluate(f.rhs(), w), true);
        break;
    case Op::Release:
        out = fixpoint(w, evaluate(f.lhs(), w), evaluate(f.rhs(), w), false);
        break;
    case Op::Eventually:
        out = fixpoint(w, Truth(n, 1), evaluate(f.lhs(), w), true);
        break;
    case Op::Always:
        out = fixpoint(w, Truth(n, 0), evaluate(f.lhs(), w), false);
        break;
    }
    return out;
}

}  // namespace

bool eval_lasso(const Formula& f, const LassoWord& w)
{
    if (w.period.empty())
        throw std::invalid_argument("lasso word needs a nonempty period");
    return evaluate(f, w)[0] != 0;
}

}  // namespace tlplan
