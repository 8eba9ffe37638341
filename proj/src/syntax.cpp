#include "inpk/syntax.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <sstream>

namespace inpk {

namespace {

std::string describe_expected(const std::vector<std::string>& expected)
{
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += ", ";
        out += expected[i];
    }
    return out;
}

enum class Tok {
    Atom,
    Arrow,
    Bar,
    BarBar,
    Amp,
    AmpAmp,
    Bang,
    Tilde,
    At,
    PostStar,
    PostCirc,
    LParen,
    RParen,
    End,
};

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
};

bool atom_start(char c) { return c >= 'a' && c <= 'z'; }
bool atom_char(char c) { return atom_start(c) || (c >= '0' && c <= '9') || c == '_'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) { advance(); }

    Formula parse_all()
    {
        Formula f = parse_imp();
        if (tok_.kind != Tok::End) fail({"'->'", "'|'", "'&'", "'||'", "'&&'", "'^*'", "'^o'", "end of input"});
        return f;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected)
    {
        throw ParseError(tok_.offset, std::move(expected), tok_.text);
    }

    void advance()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::size_t start = pos_;
        auto emit = [&](Tok k, std::size_t len) {
            tok_ = Token{k, start, std::string(text_.substr(start, len))};
            pos_ = start + len;
        };
        if (pos_ >= text_.size()) {
            tok_ = Token{Tok::End, start, "end of input"};
            return;
        }
        char c = text_[pos_];
        char d = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
        if (atom_start(c)) {
            std::size_t len = 1;
            while (start + len < text_.size() && atom_char(text_[start + len])) ++len;
            emit(Tok::Atom, len);
            return;
        }
        switch (c) {
            case '-':
                if (d == '>') return emit(Tok::Arrow, 2);
                break;
            case '|': return d == '|' ? emit(Tok::BarBar, 2) : emit(Tok::Bar, 1);
            case '&': return d == '&' ? emit(Tok::AmpAmp, 2) : emit(Tok::Amp, 1);
            case '!': return emit(Tok::Bang, 1);
            case '~': return emit(Tok::Tilde, 1);
            case '@': return emit(Tok::At, 1);
            case '(': return emit(Tok::LParen, 1);
            case ')': return emit(Tok::RParen, 1);
            case '^':
                if (d == '*') return emit(Tok::PostStar, 2);
                if (d == 'o') return emit(Tok::PostCirc, 2);
                break;
            default: break;
        }
        std::size_t len = 1;
        if (c == '^' && d != '\0') len = 2;
        throw ParseError(start, {},
                         "unknown operator '" + std::string(text_.substr(start, len)) + "'");
    }

    Formula parse_imp()
    {
        Formula lhs = parse_or();
        if (tok_.kind == Tok::Arrow) {
            advance();
            return imp(std::move(lhs), parse_imp());
        }
        return lhs;
    }

    Formula parse_or()
    {
        Formula lhs = parse_and();
        while (tok_.kind == Tok::Bar || tok_.kind == Tok::BarBar) {
            bool classical = tok_.kind == Tok::BarBar;
            advance();
            Formula rhs = parse_and();
            lhs = classical ? lor_cl(lhs, rhs) : lor(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_and()
    {
        Formula lhs = parse_prefix();
        while (tok_.kind == Tok::Amp || tok_.kind == Tok::AmpAmp) {
            bool classical = tok_.kind == Tok::AmpAmp;
            advance();
            Formula rhs = parse_prefix();
            lhs = classical ? land_cl(lhs, rhs) : land(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_prefix()
    {
        switch (tok_.kind) {
            case Tok::Bang: advance(); return neg(parse_prefix());
            case Tok::Tilde: advance(); return strong_neg(parse_prefix());
            case Tok::At: advance(); return classicalize(parse_prefix());
            default: return parse_postfix();
        }
    }

    Formula parse_postfix()
    {
        Formula f = parse_primary();
        for (;;) {
            if (tok_.kind == Tok::PostStar) {
                f = star(f);
            } else if (tok_.kind == Tok::PostCirc) {
                f = circ(f);
            } else {
                return f;
            }
            advance();
        }
    }

    Formula parse_primary()
    {
        if (tok_.kind == Tok::Atom) {
            Formula f = atom(tok_.text);
            advance();
            return f;
        }
        if (tok_.kind == Tok::LParen) {
            advance();
            Formula f = parse_imp();
            if (tok_.kind != Tok::RParen) fail({"')'", "'->'", "'|'", "'&'", "'||'", "'&&'", "'^*'", "'^o'"});
            advance();
            return f;
        }
        fail({"atom", "'('", "'!'", "'~'", "'@'"});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token tok_{Tok::End, 0, {}};
};

void render_into(const Formula& f, std::string& out)
{
    switch (f.kind()) {
        case Formula::Kind::Atom: out += f.name(); return;
        case Formula::Kind::Neg:
            out += '!';
            if (f.body().is_imp()) {
                out += '(';
                render_into(f.body(), out);
                out += ')';
            } else {
                render_into(f.body(), out);
            }
            return;
        case Formula::Kind::Imp:
            if (f.antecedent().is_imp()) {
                out += '(';
                render_into(f.antecedent(), out);
                out += ')';
            } else {
                render_into(f.antecedent(), out);
            }
            out += " -> ";
            render_into(f.consequent(), out);
            return;
    }
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "syntax error at offset " << offset << ": found " << found;
          if (!expected.empty()) msg << "; expected one of: " << describe_expected(expected);
          return msg.str();
      }()),
      offset_(offset),
      expected_(std::move(expected))
{
}

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Formula& f)
{
    std::string out;
    render_into(f, out);
    return out;
}

namespace {

// Binding levels of the concrete grammar, loosest first.
enum Level { kImp, kOr, kAnd, kPrefix, kPostfix };

std::optional<Formula> classical_arg(const Formula& f)
{
    if (f.is_imp() && f.antecedent().is_imp() && f.antecedent().antecedent() == f.consequent() &&
        f.antecedent().consequent() == f.consequent())
        return f.consequent();
    return std::nullopt;
}

std::optional<Formula> strong_arg(const Formula& f)
{
    if (!f.is_neg()) return std::nullopt;
    return classical_arg(f.body());
}

std::optional<std::pair<Formula, Formula>> or_args(const Formula& f)
{
    if (!f.is_imp()) return std::nullopt;
    auto a = strong_arg(f.antecedent());
    if (!a) return std::nullopt;
    return std::make_pair(*a, f.consequent());
}

std::optional<std::pair<Formula, Formula>> and_args(const Formula& f)
{
    auto inner = strong_arg(f);
    if (!inner || !inner->is_imp()) return std::nullopt;
    auto b = strong_arg(inner->consequent());
    if (!b) return std::nullopt;
    return std::make_pair(inner->antecedent(), *b);
}

void sugar_into(const Formula& f, Level ctx, std::string& out);

void sugar_wrapped(Level own, Level ctx, std::string& out, const auto& body)
{
    bool paren = own < ctx;
    if (paren) out += '(';
    body();
    if (paren) out += ')';
}

void sugar_into(const Formula& f, Level ctx, std::string& out)
{
    if (f.is_atom()) {
        out += f.name();
        return;
    }
    // X^* is ¬X ∨ X; X^o is ¬(¬X ∧ X).
    if (auto o = or_args(f); o && o->first.is_neg() && o->first.body() == o->second) {
        sugar_wrapped(kPostfix, ctx, out, [&] {
            sugar_into(o->second, kPostfix, out);
            out += "^*";
        });
        return;
    }
    if (f.is_neg()) {
        if (auto a = and_args(f.body()); a && a->first.is_neg() && a->first.body() == a->second) {
            sugar_wrapped(kPostfix, ctx, out, [&] {
                sugar_into(a->second, kPostfix, out);
                out += "^o";
            });
            return;
        }
    }
    if (auto a = and_args(f)) {
        sugar_wrapped(kAnd, ctx, out, [&] {
            sugar_into(a->first, kAnd, out);
            out += " & ";
            sugar_into(a->second, kPrefix, out);
        });
        return;
    }
    if (auto x = strong_arg(f)) {
        sugar_wrapped(kPrefix, ctx, out, [&] {
            out += '~';
            sugar_into(*x, kPrefix, out);
        });
        return;
    }
    if (auto o = or_args(f)) {
        sugar_wrapped(kOr, ctx, out, [&] {
            sugar_into(o->first, kOr, out);
            out += " | ";
            sugar_into(o->second, kAnd, out);
        });
        return;
    }
    if (auto x = classical_arg(f)) {
        sugar_wrapped(kPrefix, ctx, out, [&] {
            out += '@';
            sugar_into(*x, kPrefix, out);
        });
        return;
    }
    if (f.is_neg()) {
        sugar_wrapped(kPrefix, ctx, out, [&] {
            out += '!';
            sugar_into(f.body(), kPrefix, out);
        });
        return;
    }
    sugar_wrapped(kImp, ctx, out, [&] {
        sugar_into(f.antecedent(), kOr, out);
        out += " -> ";
        sugar_into(f.consequent(), kImp, out);
    });
}

}  // namespace

std::string render_sugared(const Formula& f)
{
    std::string out;
    sugar_into(f, kImp, out);
    return out;
}

}  // namespace inpk
