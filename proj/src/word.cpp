#include "chainlift/word.hpp"

#include <algorithm>

namespace chainlift {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters))
{
}

bool Word::isReduced() const
{
    for (std::size_t i = 0; i + 1 < letters_.size(); ++i)
    {
        if (letters_[i + 1] == letters_[i].inverse())
            return false;
    }
    return true;
}

void Word::push(Letter letter)
{
    if (!letters_.empty() && letters_.back() == letter.inverse())
        letters_.pop_back();
    else
        letters_.push_back(letter);
}

Word Word::reduced() const
{
    Word out;
    out.letters_.reserve(letters_.size());
    for (const Letter& l : letters_)
        out.push(l);
    return out;
}

Word Word::inverse() const
{
    Word out;
    out.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        out.letters_.push_back(it->inverse());
    return out;
}

Word Word::operator*(const Word& other) const
{
    Word out = reduced();
    for (const Letter& l : other.letters_)
        out.push(l);
    return out;
}

std::string Word::toString() const
{
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i)
    {
        if (i > 0)
            out += ' ';
        out += generatorSymbol(letters_[i].generator);
        out += letters_[i].exponent > 0 ? "^1" : "^-1";
    }
    return out;
}

std::strong_ordering Word::operator<=>(const Word& other) const
{
    if (auto c = letters_.size() <=> other.letters_.size(); c != 0)
        return c;
    return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                  other.letters_.begin(), other.letters_.end());
}

std::string generatorSymbol(std::size_t g)
{
    return "g" + std::to_string(g + 1);
}

}   // namespace chainlift
