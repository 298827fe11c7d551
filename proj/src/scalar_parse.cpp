#include <cctype>

#include "idem/rings.hpp"

namespace idem {

namespace {

// Recursive-descent evaluator for the scalar grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := number ['/' number] | var ['^' number] | '(' expr ')' ['^' number]
// Whitespace is skipped everywhere; the result is built with ring arithmetic so
// every ring gets canonical form for free.
class ScalarParser {
public:
    ScalarParser(const Ring& ring, std::string_view text) : ring_(ring)
    {
        for (std::size_t i = 0; i < text.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(text[i])))
                chars_.push_back({text[i], i + 1});
        end_column_ = text.size() + 1;
    }

    RingValue parse()
    {
        if (chars_.empty())
            fail("empty scalar");
        auto v = expr();
        if (pos_ != chars_.size())
            fail(std::string("unexpected '") + peek() + "'");
        return v;
    }

private:
    struct Char {
        char c;
        std::size_t column;
    };

    [[noreturn]] void fail(const std::string& message) const
    {
        auto column = pos_ < chars_.size() ? chars_[pos_].column : end_column_;
        throw ParseError(message + " in " + ring_->name() + " scalar", 0, column);
    }

    char peek() const { return pos_ < chars_.size() ? chars_[pos_].c : '\0'; }

    bool accept(char c)
    {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }

    RingValue expr()
    {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        auto acc = term();
        if (negate)
            acc = -acc;
        while (true) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    RingValue term()
    {
        auto acc = factor();
        while (accept('*'))
            acc = acc * factor();
        return acc;
    }

    mpz_class number()
    {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += peek();
            ++pos_;
        }
        if (digits.empty())
            fail("expected a number");
        return mpz_class(digits);
    }

    unsigned long exponent()
    {
        auto start = pos_;
        auto e = number();
        if (!e.fits_ulong_p() || e > 1000000) {
            pos_ = start;
            fail("exponent too large");
        }
        return e.get_ui();
    }

    RingValue factor()
    {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto num = number();
            if (accept('/')) {
                auto start = pos_;
                auto den = number();
                if (den == 0) {
                    pos_ = start;
                    fail("zero denominator");
                }
                try {
                    return RingValue::fraction(ring_, num, den);
                } catch (const Error& e) {
                    pos_ = start;
                    fail(e.what());
                }
            }
            return RingValue::from_integer(ring_, num);
        }
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            if (!accept(')'))
                fail("expected ')'");
            return accept('^') ? pow(inner, exponent()) : inner;
        }
        if (c == 'x') {
            auto start = pos_;
            ++pos_;
            std::size_t index = 0;
            if (ring_->kind() == RingKind::MultiPoly) {
                auto k = number();
                if (k == 0 || k > ring_->num_vars()) {
                    pos_ = start;
                    fail("variable index out of range");
                }
                index = k.get_ui() - 1;
            } else if (ring_->kind() != RingKind::UniPoly) {
                pos_ = start;
                fail("variables are not allowed");
            }
            auto v = RingValue::variable(ring_, index);
            return accept('^') ? pow(v, exponent()) : v;
        }
        if (c == '\0')
            fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }

    const Ring& ring_;
    std::vector<Char> chars_;
    std::size_t pos_ = 0;
    std::size_t end_column_ = 1;
};

} // namespace

RingValue parse_scalar(const Ring& ring, std::string_view text)
{
    if (ring->kind() == RingKind::RationalFunctions)
        throw Error(ErrorKind::UnsupportedRing, "rational functions have no text grammar");
    return ScalarParser(ring, text).parse();
}

} // namespace idem
