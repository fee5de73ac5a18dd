/**
 * Words over a numbered generating set, with letters g_i^{+1} / g_i^{-1}.
 */
#ifndef CHAINLIFT_WORD_HPP
#define CHAINLIFT_WORD_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace chainlift {

struct Letter
{
    std::size_t generator;
    int exponent;   // +1 or -1

    Letter inverse() const { return {generator, -exponent}; }

    auto operator<=>(const Letter&) const = default;
};

class Word
{
    private:
        std::vector<Letter> letters_;

    public:
        Word() = default;

        /** Takes the letters as given; call `reduced()` for the normal form. */
        explicit Word(std::vector<Letter> letters);

        static Word generator(std::size_t g, int exponent = 1) { return Word({Letter{g, exponent}}); }

        const std::vector<Letter>& letters() const { return letters_; }
        std::size_t length() const { return letters_.size(); }
        bool empty() const { return letters_.empty(); }

        /** No adjacent pair g^e g^-e. */
        bool isReduced() const;

        /** Free reduction (stack based, linear time). */
        Word reduced() const;

        Word inverse() const;

        /** Appends one letter, cancelling against the last letter if possible. */
        void push(Letter letter);

        /** Free product of the two words, freely reduced. */
        Word operator*(const Word& other) const;

        /** `g1^1 g2^-1`, empty string for the identity. */
        std::string toString() const;

        /** Shorter words first, then lexicographic in letters. */
        std::strong_ordering operator<=>(const Word& other) const;
        bool operator==(const Word& other) const = default;
};

/** Symbol used for generator index g in text exports (g1, g2, ...). */
std::string generatorSymbol(std::size_t g);

}   // namespace chainlift

#endif
