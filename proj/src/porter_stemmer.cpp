// Porter, M.F. "An algorithm for suffix stripping", Program 14(3), 1980.
// Operates on lowercase ASCII words; anything else is returned unchanged.

#include <string>
#include <string_view>

#include "rumor/textpipe.hpp"

namespace rumor {

namespace {

class Stemmer {
public:
    explicit Stemmer(std::string_view word) : b_(word) {}

    std::string run()
    {
        if (b_.size() <= 2) {
            return b_;
        }
        step1ab();
        if (b_.size() > 1) {
            step1c();
            step2();
            step3();
            step4();
            step5();
        }
        return b_;
    }

private:
    // b_[0..k_] is the current word, j_ marks the stem end after ends().
    bool cons(std::size_t i) const
    {
        switch (b_[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !cons(i - 1);
        default:
            return true;
        }
    }

    // Number of VC sequences in b_[0..j_].
    int m() const
    {
        int n = 0;
        std::size_t i = 0;
        const std::size_t end = j_ + 1;
        while (true) {
            if (i >= end) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i >= end) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i >= end) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const
    {
        for (std::size_t i = 0; i <= j_; ++i) {
            if (!cons(i)) return true;
        }
        return false;
    }

    bool doublec(std::size_t i) const
    {
        return i >= 1 && b_[i] == b_[i - 1] && cons(i);
    }

    // cvc(i) is true when i-2,i-1,i has the form consonant-vowel-consonant
    // and the last consonant is not w, x or y.
    bool cvc(std::size_t i) const
    {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        char ch = b_[i];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(std::string_view s)
    {
        std::size_t k = b_.size();
        if (s.size() > k) return false;
        if (std::string_view(b_).substr(k - s.size()) != s) return false;
        // j_ may wrap when the suffix is the whole word; callers guard with m().
        j_ = k - s.size() - 1;
        stem_empty_ = (k == s.size());
        return true;
    }

    void setto(std::string_view s)
    {
        b_.resize(j_ + 1);
        b_ += s;
    }

    void r(std::string_view s)
    {
        if (!stem_empty_ && m() > 0) setto(s);
    }

    int m_guarded() const { return stem_empty_ ? 0 : m(); }

    void step1ab()
    {
        if (b_.back() == 's') {
            if (ends("sses")) {
                b_.resize(b_.size() - 2);
            } else if (ends("ies")) {
                setto("i");
            } else if (b_.size() >= 2 && b_[b_.size() - 2] != 's') {
                b_.pop_back();
            }
        }
        if (ends("eed")) {
            if (m_guarded() > 0) b_.pop_back();
        } else if ((ends("ed") || ends("ing")) && !stem_empty_ && vowel_in_stem()) {
            b_.resize(j_ + 1);
            if (ends("at")) {
                setto("ate");
            } else if (ends("bl")) {
                setto("ble");
            } else if (ends("iz")) {
                setto("ize");
            } else if (doublec(b_.size() - 1)) {
                char ch = b_.back();
                if (ch != 'l' && ch != 's' && ch != 'z') b_.pop_back();
            } else {
                j_ = b_.size() - 1;
                stem_empty_ = false;
                if (m() == 1 && cvc(b_.size() - 1)) b_ += 'e';
            }
        }
    }

    void step1c()
    {
        if (ends("y") && !stem_empty_ && vowel_in_stem()) {
            b_.back() = 'i';
        }
    }

    void step2()
    {
        if (b_.size() < 2) return;
        switch (b_[b_.size() - 2]) {
        case 'a':
            if (ends("ational")) { r("ate"); break; }
            if (ends("tional")) { r("tion"); break; }
            break;
        case 'c':
            if (ends("enci")) { r("ence"); break; }
            if (ends("anci")) { r("ance"); break; }
            break;
        case 'e':
            if (ends("izer")) { r("ize"); break; }
            break;
        case 'l':
            if (ends("bli")) { r("ble"); break; }
            if (ends("alli")) { r("al"); break; }
            if (ends("entli")) { r("ent"); break; }
            if (ends("eli")) { r("e"); break; }
            if (ends("ousli")) { r("ous"); break; }
            break;
        case 'o':
            if (ends("ization")) { r("ize"); break; }
            if (ends("ation")) { r("ate"); break; }
            if (ends("ator")) { r("ate"); break; }
            break;
        case 's':
            if (ends("alism")) { r("al"); break; }
            if (ends("iveness")) { r("ive"); break; }
            if (ends("fulness")) { r("ful"); break; }
            if (ends("ousness")) { r("ous"); break; }
            break;
        case 't':
            if (ends("aliti")) { r("al"); break; }
            if (ends("iviti")) { r("ive"); break; }
            if (ends("biliti")) { r("ble"); break; }
            break;
        case 'g':
            if (ends("logi")) { r("log"); break; }
            break;
        default:
            break;
        }
    }

    void step3()
    {
        switch (b_.back()) {
        case 'e':
            if (ends("icate")) { r("ic"); break; }
            if (ends("ative")) { r(""); break; }
            if (ends("alize")) { r("al"); break; }
            break;
        case 'i':
            if (ends("iciti")) { r("ic"); break; }
            break;
        case 'l':
            if (ends("ical")) { r("ic"); break; }
            if (ends("ful")) { r(""); break; }
            break;
        case 's':
            if (ends("ness")) { r(""); break; }
            break;
        default:
            break;
        }
    }

    void step4()
    {
        if (b_.size() < 2) return;
        bool hit = false;
        switch (b_[b_.size() - 2]) {
        case 'a': hit = ends("al"); break;
        case 'c': hit = ends("ance") || ends("ence"); break;
        case 'e': hit = ends("er"); break;
        case 'i': hit = ends("ic"); break;
        case 'l': hit = ends("able") || ends("ible"); break;
        case 'n': hit = ends("ant") || ends("ement") || ends("ment") || ends("ent"); break;
        case 'o':
            if (ends("ion")) {
                hit = !stem_empty_ && (b_[j_] == 's' || b_[j_] == 't');
            } else {
                hit = ends("ou");
            }
            break;
        case 's': hit = ends("ism"); break;
        case 't': hit = ends("ate") || ends("iti"); break;
        case 'u': hit = ends("ous"); break;
        case 'v': hit = ends("ive"); break;
        case 'z': hit = ends("ize"); break;
        default: break;
        }
        if (hit && m_guarded() > 1) {
            b_.resize(j_ + 1);
        }
    }

    void step5()
    {
        // both measures are taken over the word as it enters this step
        j_ = b_.size() - 1;
        stem_empty_ = false;
        const int measure = m();
        if (b_.back() == 'e') {
            if (measure > 1 || (measure == 1 && !cvc(b_.size() - 2))) {
                b_.pop_back();
            }
        }
        if (b_.back() == 'l' && doublec(b_.size() - 1) && measure > 1) {
            b_.pop_back();
        }
    }

    std::string b_;
    std::size_t j_ = 0;
    bool stem_empty_ = false;
};

bool is_lower_ascii(std::string_view w)
{
    for (char c : w) {
        if (c < 'a' || c > 'z') return false;
    }
    return true;
}

}  // namespace

std::string porter_stem(std::string_view word)
{
    if (!is_lower_ascii(word)) {
        return std::string(word);
    }
    return Stemmer(word).run();
}

}  // namespace rumor
