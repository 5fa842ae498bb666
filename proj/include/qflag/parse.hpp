#pragma once

/**
 * @file parse.hpp
 * @brief Parser for elements of U_q(n) written in the command-line grammar.
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := unary (('*' | '/') unary)*
 *   unary  := '-' unary | power
 *   power  := atom ('^' exponent)?
 *   exponent := ['-'] INT | '(' ['-'] INT ')'
 *   atom   := 'E' INT | 'q' | INT | '(' expr ')'
 *
 * E<i>^(k) is the divided power E_i^{(k)}; every other power is an ordinary
 * power. Negative powers and division are allowed on scalars only.
 */

#include "qea.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace qflag {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

class ExprParser {
public:
    ExprParser(const std::string& text, int rank) : s_(text), rank_(rank) {}

    UPlusExpr parse() {
        skip();
        if (pos_ == s_.size())
            throw ParseError("empty expression", pos_);
        UPlusExpr x = expr();
        skip();
        if (pos_ != s_.size())
            throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return x;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    static bool is_scalar(const UPlusExpr& x) {
        for (const auto& [w, c] : x.terms())
            if (!w.empty())
                return false;
        return true;
    }
    static RatScalar scalar_value(const UPlusExpr& x) {
        auto it = x.terms().find(EWord{});
        return it == x.terms().end() ? RatScalar() : it->second;
    }

    UPlusExpr expr() {
        UPlusExpr x = term();
        for (;;) {
            if (accept('+'))
                x += term();
            else if (accept('-'))
                x -= term();
            else
                return x;
        }
    }

    UPlusExpr term() {
        UPlusExpr x = unary();
        for (;;) {
            if (accept('*')) {
                x = x * unary();
            } else if (peek() == '/') {
                const std::size_t at = pos_++;
                const UPlusExpr d = unary();
                if (!is_scalar(d))
                    throw ParseError("division by a non-scalar", at);
                const RatScalar v = scalar_value(d);
                if (v.is_zero())
                    throw ParseError("division by zero", at);
                x = v.inverse() * x;
            } else {
                return x;
            }
        }
    }

    UPlusExpr unary() {
        if (accept('-'))
            return RatScalar(-1) * unary();
        return power();
    }

    UPlusExpr power() {
        skip();
        const std::size_t at = pos_;
        bool generator = false;
        int gen = 0;
        UPlusExpr base = atom(generator, gen);
        if (!accept('^'))
            return base;
        skip();
        const std::size_t exp_at = pos_;
        const bool paren = accept('(');
        const bool neg = accept('-');
        const long k = integer("exponent must be an integer");
        if (paren && !accept(')'))
            throw ParseError("expected ')'", pos_);
        const long e = neg ? -k : k;
        if (paren && generator) {
            if (e < 0)
                throw ParseError("divided power must be non-negative", exp_at);
            if (e == 0)
                return UPlusExpr::one();
            return UPlusExpr::generator(gen, static_cast<int>(e));
        }
        if (e < 0) {
            if (!is_scalar(base))
                throw ParseError("negative power of a non-scalar", at);
            const RatScalar v = scalar_value(base);
            if (v.is_zero())
                throw ParseError("negative power of zero", at);
            return UPlusExpr::scalar(pow(v.inverse(), -e));
        }
        UPlusExpr r = UPlusExpr::one();
        for (long t = 0; t < e; ++t)
            r = r * base;
        return r;
    }

    static RatScalar pow(const RatScalar& v, long e) {
        RatScalar r(1);
        for (long t = 0; t < e; ++t)
            r *= v;
        return r;
    }

    long integer(const char* err) {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError(err, start);
        if (pos_ - start > 9)
            throw ParseError("integer too large", start);
        return std::stol(s_.substr(start, pos_ - start));
    }

    UPlusExpr atom(bool& generator, int& gen) {
        skip();
        const std::size_t at = pos_;
        if (pos_ == s_.size())
            throw ParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (c == 'E') {
            ++pos_;
            if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError("generator index expected after 'E'", pos_);
            const long i = integer("generator index expected");
            if (i < 1 || i > rank_)
                throw ParseError("unknown atom E" + std::to_string(i), at);
            generator = true;
            gen = static_cast<int>(i);
            return UPlusExpr::generator(gen);
        }
        if (c == 'q') {
            ++pos_;
            return UPlusExpr::scalar(RatScalar::q_pow(1));
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return UPlusExpr::scalar(RatScalar(static_cast<long>(integer("integer expected"))));
        if (c == '(') {
            ++pos_;
            UPlusExpr x = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return x;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end])))
                ++end;
            throw ParseError("unknown atom '" + s_.substr(pos_, end - pos_) + "'", at);
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", at);
    }

    const std::string& s_;
    int rank_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses an element of U_q(n) of the given rank; throws ParseError with the byte offset on failure.
inline UPlusExpr parse_expr(const std::string& text, int rank) {
    return detail::ExprParser(text, rank).parse();
}

} // namespace qflag
