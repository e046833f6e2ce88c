#include "hopf2/bar_tor.hpp"

#include "hopf2/divided_power.hpp"
#include "hopf2/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hopf2 {

bool monomial_lex_less(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second) return a[i].second < b[j].second;
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            return false;  // a is nonzero at an earlier generator than b
        } else {
            return true;
        }
    }
    return j < b.size();
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            out.push_back(a[i++]);
        else if (a[i].first > b[j].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
    return out;
}

PresentedAlgebra::PresentedAlgebra(std::vector<int> generator_degrees, int torus_rank,
                                   int trunc)
    : gen_degrees_(std::move(generator_degrees)), torus_rank_(torus_rank), trunc_(trunc) {
    if (trunc_ < 0) throw std::invalid_argument("truncation must be >= 0");
    if (torus_rank_ < 0) throw std::invalid_argument("torus rank must be >= 0");
    for (int d : gen_degrees_) {
        if (d < 1) throw std::invalid_argument("generator degrees must be positive");
        if (d > trunc_) throw std::invalid_argument("generator degree beyond truncation");
    }
    // Enumerate the monomial basis per degree, in dense-lex order on exponent
    // vectors: ascending exponents with generator 0 outermost produce the
    // order directly.
    const size_t g = gen_degrees_.size();
    std::vector<int> min_suffix(g + 1, INT32_MAX);
    for (size_t i = g; i-- > 0;)
        min_suffix[i] = std::min(min_suffix[i + 1], gen_degrees_[i]);
    monomials_.resize(static_cast<size_t>(trunc_) + 1);
    Monomial current;
    auto recurse = [&](auto&& self, size_t gen, int spent) -> void {
        monomials_[static_cast<size_t>(spent)].push_back(current);
        if (gen == g) return;
        for (size_t i = gen; i < g; ++i) {
            const int d = gen_degrees_[i];
            if (spent + d > trunc_) continue;
            // Allocate nonzero exponent to generator i, then recurse on later
            // generators only; this emits each monomial exactly once.
            current.emplace_back(static_cast<int>(i), 0);
            for (int e = 1; spent + e * d <= trunc_; ++e) {
                current.back().second = e;
                self(self, i + 1, spent + e * d);
            }
            current.pop_back();
        }
    };
    recurse(recurse, 0, 0);
    for (auto& list : monomials_)
        std::sort(list.begin(), list.end(), monomial_lex_less);
}

int PresentedAlgebra::degree_of(const Monomial& m) const {
    int d = 0;
    for (const auto& [gen, exp] : m) d += gen_degrees_.at(static_cast<size_t>(gen)) * exp;
    return d;
}

const std::vector<Monomial>& PresentedAlgebra::monomials(int degree) const {
    if (degree < 0 || degree > trunc_) throw std::out_of_range("degree out of range");
    return monomials_[static_cast<size_t>(degree)];
}

long long PresentedAlgebra::monomial_count(int degree) const {
    if (degree < 0 || degree > trunc_) return 0;
    return static_cast<long long>(monomials_[static_cast<size_t>(degree)].size());
}

long long PresentedAlgebra::monomial_index(int degree, const Monomial& m) const {
    const auto& list = monomials(degree);
    auto it = std::lower_bound(list.begin(), list.end(), m, monomial_lex_less);
    if (it == list.end() || *it != m) return -1;
    return it - list.begin();
}

std::vector<int> PresentedAlgebra::generator_counts() const {
    std::vector<int> counts(static_cast<size_t>(trunc_) + 1, 0);
    for (int d : gen_degrees_) ++counts[static_cast<size_t>(d)];
    return counts;
}

StructuredHopf to_hopf(const PresentedAlgebra& a) {
    const int n = a.trunc();
    std::vector<std::vector<std::string>> labels(static_cast<size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
        for (const Monomial& m : a.monomials(d)) {
            std::ostringstream name;
            if (m.empty()) name << "1";
            for (size_t i = 0; i < m.size(); ++i) {
                if (i) name << ".";
                name << "x" << m[i].first;
                if (m[i].second > 1) name << "^" << m[i].second;
            }
            labels[static_cast<size_t>(d)].push_back(name.str());
        }

    auto id_of = [&](const Monomial& m) -> BasisId {
        const int d = a.degree_of(m);
        return BasisId{d, static_cast<int>(a.monomial_index(d, m))};
    };

    std::vector<StructuredHopf::ProductEntry> product;
    for (int d1 = 0; d1 <= n; ++d1)
        for (int d2 = 0; d1 + d2 <= n; ++d2)
            for (const Monomial& m1 : a.monomials(d1))
                for (const Monomial& m2 : a.monomials(d2))
                    product.push_back(StructuredHopf::ProductEntry{
                        id_of(m1), id_of(m2), {id_of(monomial_mul(m1, m2))}});

    // Generators are primitive, so the coproduct of a monomial splits each
    // exponent binomially (Lucas parity over F2).
    std::vector<StructuredHopf::CoproductEntry> coproduct;
    for (int d = 0; d <= n; ++d)
        for (const Monomial& m : a.monomials(d)) {
            StructuredHopf::CoproductEntry e{id_of(m), {}};
            Monomial left, right;
            auto split = [&](auto&& self, size_t pos) -> void {
                if (pos == m.size()) {
                    e.terms.emplace_back(id_of(left), id_of(right));
                    return;
                }
                const auto [gen, exp] = m[pos];
                for (int f = 0; f <= exp; ++f) {
                    if (!binom_mod2(static_cast<uint64_t>(exp), static_cast<uint64_t>(f)))
                        continue;
                    if (f > 0) left.emplace_back(gen, f);
                    if (exp - f > 0) right.emplace_back(gen, exp - f);
                    self(self, pos + 1);
                    if (f > 0) left.pop_back();
                    if (exp - f > 0) right.pop_back();
                }
            };
            split(split, 0);
            coproduct.push_back(std::move(e));
        }

    return StructuredHopf(GradedVS(std::move(labels)), std::move(product),
                          std::move(coproduct), {1}, Pi0Descriptor::trivial());
}

/* ---- bar words ------------------------------------------------------- */

namespace {

long long to_ll_checked(const BigInt& v) {
    if (v < 0 || v > std::numeric_limits<long long>::max())
        throw std::overflow_error("dimension does not fit in long long");
    return v.convert_to<long long>();
}

// Word slot handle: monomial (degree, index) packed into 32 bits.
using Handle = uint32_t;
constexpr int kIndexBits = 20;

Handle make_handle(int degree, size_t index) {
    return (static_cast<Handle>(degree) << kIndexBits) | static_cast<Handle>(index);
}
int handle_degree(Handle h) { return static_cast<int>(h >> kIndexBits); }
size_t handle_index(Handle h) { return h & ((1u << kIndexBits) - 1); }

// All bar words at (s, t): flattened handle sequences in lexicographic order.
struct Level {
    int s = 0;
    std::vector<Handle> flat;
    size_t count = 0;
};

Level enumerate_words(const PresentedAlgebra& a, int s, int t) {
    Level level;
    level.s = s;
    if (s == 0) {
        level.count = t == 0 ? 1 : 0;
        return level;
    }
    int min_deg = 0;
    for (int d = 1; d <= a.trunc(); ++d)
        if (a.monomial_count(d) > 0) { min_deg = d; break; }
    if (min_deg == 0) return level;  // no positive-degree monomials at all
    std::vector<Handle> current(static_cast<size_t>(s));
    auto recurse = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == s) {
            if (remaining == 0) {
                level.flat.insert(level.flat.end(), current.begin(), current.end());
                ++level.count;
            }
            return;
        }
        const int slots_after = s - slot - 1;
        for (int d = min_deg; d + slots_after * min_deg <= remaining; ++d) {
            const auto& monos = a.monomials(d);
            if (monos.empty()) continue;
            for (size_t i = 0; i < monos.size(); ++i) {
                current[static_cast<size_t>(slot)] = make_handle(d, i);
                self(self, slot + 1, remaining - d);
            }
        }
    };
    if (t >= s * min_deg) recurse(recurse, 0, t);
    return level;
}

// Total multidegree of a word: the exponent sum over all slots.
Monomial word_multidegree(const PresentedAlgebra& a, const Handle* w, int s) {
    Monomial mu;
    for (int i = 0; i < s; ++i) {
        const Monomial& m = a.monomials(handle_degree(w[i]))[handle_index(w[i])];
        mu = monomial_mul(mu, m);
    }
    return mu;
}

struct Block {
    Monomial mu;
    std::vector<size_t> word_ids;  // indices into the level, ascending
};

std::map<Monomial, Block> split_blocks(const PresentedAlgebra& a, const Level& level) {
    std::map<Monomial, Block> blocks;
    for (size_t w = 0; w < level.count; ++w) {
        Monomial mu = word_multidegree(a, level.flat.data() + w * level.s, level.s);
        Block& b = blocks[mu];
        if (b.word_ids.empty()) b.mu = mu;
        b.word_ids.push_back(w);
    }
    return blocks;
}

// Lexicographic comparison of handle sequences of equal length.
bool word_less(const Handle* a, const Handle* b, int s) {
    for (int i = 0; i < s; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Locate a word inside a block of the target level by binary search.
long long find_word(const Level& level, const Block& block, const Handle* w) {
    size_t lo = 0, hi = block.word_ids.size();
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        const Handle* cand = level.flat.data() + block.word_ids[mid] * level.s;
        if (word_less(cand, w, level.s))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == block.word_ids.size()) return -1;
    const Handle* cand = level.flat.data() + block.word_ids[lo] * level.s;
    return word_less(w, cand, level.s) ? -1 : static_cast<long long>(lo);
}

// Rank of the differential block d: (s, mu) -> (s-1, mu).  The matrix is
// assembled with the smaller side as rows (rank is orientation independent)
// and eliminated with packed rows.
size_t block_rank(const PresentedAlgebra& a, const Level& upper, const Block& ub,
                  const Level& lower, const Block& lb) {
    const int s = upper.s;
    const size_t rows_up = ub.word_ids.size();
    const size_t cols_low = lb.word_ids.size();
    if (rows_up == 0 || cols_low == 0) return 0;

    std::vector<Handle> face(static_cast<size_t>(s - 1));
    const bool transpose = cols_low <= rows_up;
    BitMatrix m(transpose ? cols_low : rows_up, transpose ? rows_up : cols_low);
    for (size_t wi = 0; wi < rows_up; ++wi) {
        const Handle* w = upper.flat.data() + ub.word_ids[wi] * s;
        for (int i = 0; i + 1 < s; ++i) {
            // Fold slots i, i+1.
            for (int j = 0; j < i; ++j) face[static_cast<size_t>(j)] = w[j];
            const Monomial& m1 = a.monomials(handle_degree(w[i]))[handle_index(w[i])];
            const Monomial& m2 =
                a.monomials(handle_degree(w[i + 1]))[handle_index(w[i + 1])];
            const Monomial prod = monomial_mul(m1, m2);
            const int pd = handle_degree(w[i]) + handle_degree(w[i + 1]);
            const long long pidx = a.monomial_index(pd, prod);
            if (pidx < 0) throw std::logic_error("bar face product not in basis");
            face[static_cast<size_t>(i)] = make_handle(pd, static_cast<size_t>(pidx));
            for (int j = i + 2; j < s; ++j) face[static_cast<size_t>(j - 1)] = w[j];
            const long long target = find_word(lower, lb, face.data());
            if (target < 0) throw std::logic_error("bar face not found in target block");
            // Over F2 a repeated face cancels; toggle the bit.
            if (transpose)
                m.flip(static_cast<size_t>(target), wi);
            else
                m.flip(wi, static_cast<size_t>(target));
        }
    }
    return rank_destructive(std::move(m));
}

}  // namespace

/* ---- BarComplex ------------------------------------------------------- */

BarComplex::BarComplex(PresentedAlgebra algebra, int s_max, int t_max)
    : algebra_(std::move(algebra)), s_max_(s_max), t_max_(t_max) {
    if (s_max < 0 || t_max < 0) throw std::invalid_argument("negative bar bounds");
    if (t_max > algebra_.trunc())
        throw std::invalid_argument("bar t bound beyond algebra truncation");
}

BarComplex build_bar(const PresentedAlgebra& a, int s_max, int t_max) {
    return BarComplex(a, s_max, t_max);
}

std::vector<std::vector<Monomial>> BarComplex::words(int s, int t) const {
    if (s < 0 || s > s_max_ || t < 0 || t > t_max_)
        throw std::out_of_range("bar bidegree out of range");
    const Level level = enumerate_words(algebra_, s, t);
    std::vector<std::vector<Monomial>> out;
    out.reserve(level.count);
    for (size_t w = 0; w < level.count; ++w) {
        std::vector<Monomial> word;
        word.reserve(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i) {
            const Handle h = level.flat[w * static_cast<size_t>(s) + static_cast<size_t>(i)];
            word.push_back(algebra_.monomials(handle_degree(h))[handle_index(h)]);
        }
        out.push_back(std::move(word));
    }
    return out;
}

size_t BarComplex::word_count(int s, int t) const {
    if (s < 0 || s > s_max_ || t < 0 || t > t_max_)
        throw std::out_of_range("bar bidegree out of range");
    return enumerate_words(algebra_, s, t).count;
}

BitMatrix BarComplex::differential(int s, int t) const {
    if (s < 1 || s > s_max_ || t < 0 || t > t_max_)
        throw std::out_of_range("bar bidegree out of range");
    const Level upper = enumerate_words(algebra_, s, t);
    const Level lower = enumerate_words(algebra_, s - 1, t);
    BitMatrix m(lower.count, upper.count);
    if (s == 1) return m;  // reduced: both outer faces vanish
    std::vector<Handle> face(static_cast<size_t>(s - 1));
    for (size_t w = 0; w < upper.count; ++w) {
        const Handle* word = upper.flat.data() + w * static_cast<size_t>(s);
        for (int i = 0; i + 1 < s; ++i) {
            for (int j = 0; j < i; ++j) face[static_cast<size_t>(j)] = word[j];
            const Monomial prod = monomial_mul(
                algebra_.monomials(handle_degree(word[i]))[handle_index(word[i])],
                algebra_.monomials(handle_degree(word[i + 1]))[handle_index(word[i + 1])]);
            const int pd = handle_degree(word[i]) + handle_degree(word[i + 1]);
            face[static_cast<size_t>(i)] =
                make_handle(pd, static_cast<size_t>(algebra_.monomial_index(pd, prod)));
            for (int j = i + 2; j < s; ++j) face[static_cast<size_t>(j - 1)] = word[j];
            // Locate the face among all (s-1, t) words.
            size_t lo = 0, hi = lower.count;
            while (lo < hi) {
                const size_t mid = (lo + hi) / 2;
                if (word_less(lower.flat.data() + mid * static_cast<size_t>(s - 1),
                              face.data(), s - 1))
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo == lower.count ||
                word_less(face.data(), lower.flat.data() + lo * static_cast<size_t>(s - 1),
                          s - 1))
                throw std::logic_error("bar face not found");
            m.flip(lo, w);
        }
    }
    return m;
}

/* ---- TorTable ---------------------------------------------------------- */

TorTable::TorTable(int s_max, int t_max, TorProvenance p)
    : s_max_(s_max), t_max_(t_max), provenance_(p) {
    if (s_max < 0 || t_max < 0) throw std::invalid_argument("negative table bounds");
}

long long TorTable::dim(int s, int t) const {
    auto it = dims_.find({s, t});
    return it == dims_.end() ? 0 : it->second;
}

void TorTable::set_dim(int s, int t, long long v) {
    if (s < 0 || s > s_max_ || t < 0 || t > t_max_)
        throw std::out_of_range("TorTable index out of range");
    if (v == 0)
        dims_.erase({s, t});
    else
        dims_[{s, t}] = v;
}

std::string TorTable::text_grid() const {
    size_t width = 1;
    for (const auto& [st, v] : dims_)
        width = std::max(width, std::to_string(v).size());
    std::ostringstream out;
    for (int s = s_max_; s >= 0; --s) {
        out << (s < 10 ? " " : "") << s << " |";
        for (int t = 0; t <= t_max_; ++t) {
            const long long v = dim(s, t);
            std::string cell = v == 0 ? "." : std::to_string(v);
            out << " " << std::string(width - cell.size(), ' ') << cell;
        }
        out << "\n";
    }
    out << "---+" << std::string((width + 1) * static_cast<size_t>(t_max_ + 1), '-')
        << "\n s/t";
    for (int t = 0; t <= t_max_; ++t) {
        std::string cell = std::to_string(t);
        out << " " << std::string(width > cell.size() ? width - cell.size() : 0, ' ')
            << cell;
    }
    out << "\n";
    return out.str();
}

TruncSeries TorTable::total_degree_collapse() const {
    std::vector<BigInt> c(static_cast<size_t>(t_max_) + 1, BigInt(0));
    for (const auto& [st, v] : dims_) {
        const int d = st.first + st.second;
        if (d <= t_max_) c[static_cast<size_t>(d)] += v;
    }
    return TruncSeries(t_max_, std::move(c));
}

bool dims_equal(const TorTable& a, const TorTable& b) {
    const int s_max = std::min(a.s_max(), b.s_max());
    const int t_max = std::min(a.t_max(), b.t_max());
    for (int s = 0; s <= s_max; ++s)
        for (int t = 0; t <= t_max; ++t)
            if (a.dim(s, t) != b.dim(s, t)) return false;
    return true;
}

/* ---- tor_dims ---------------------------------------------------------- */

namespace {

// Word counts per (s,t) from the generating series (M(alpha) - 1)^s.
std::vector<std::vector<BigInt>> word_count_table(const PresentedAlgebra& a, int S,
                                                  int N) {
    std::vector<BigInt> m(static_cast<size_t>(N) + 1, BigInt(0));
    for (int d = 1; d <= N; ++d) m[static_cast<size_t>(d)] = a.monomial_count(d);
    TruncSeries mm(N, std::move(m));
    std::vector<std::vector<BigInt>> counts(static_cast<size_t>(S) + 1);
    TruncSeries acc = TruncSeries::one(N);
    counts[0] = acc.coeffs();
    for (int s = 1; s <= S; ++s) {
        acc = mul(acc, mm);
        counts[static_cast<size_t>(s)] = acc.coeffs();
    }
    return counts;
}

struct BlockJob {
    int s;          // differential d_s
    int t;
    const Block* upper;
    const Block* lower;
    double cost;
};

}  // namespace

double tor_work_estimate(const PresentedAlgebra& a, int S, int N) {
    const auto counts = word_count_table(a, S + 1, N);
    double total = 0;
    for (int s = 2; s <= S + 1; ++s)
        for (int t = 0; t <= N; ++t) {
            const double up = counts[static_cast<size_t>(s)][static_cast<size_t>(t)]
                                  .convert_to<double>();
            const double low = counts[static_cast<size_t>(s - 1)][static_cast<size_t>(t)]
                                   .convert_to<double>();
            const double small = std::min(up, low), big = std::max(up, low);
            // Progressive elimination over the smaller orientation.
            total += small * small / 4.0 * (big / 64.0);
        }
    return total;
}

std::optional<TorTable> tor_dims_capped(const PresentedAlgebra& a, int S, int N,
                                        const TorLimits& limits, int jobs) {
    if (S < 0 || N < 0) throw std::invalid_argument("negative Tor bounds");
    if (N > a.trunc()) throw std::invalid_argument("t bound beyond algebra truncation");

    {
        const auto counts = word_count_table(a, S + 1, N);
        BigInt max_words(0);
        for (const auto& row : counts)
            for (const BigInt& c : row) max_words = std::max(max_words, c);
        if (max_words > BigInt(limits.max_words)) return std::nullopt;
        if (max_words >= BigInt(1) << kIndexBits)
            throw std::invalid_argument("bar level too large for the word index space");
    }

    // Enumerate levels s = 0..S+1 per t, split into multidegree blocks.
    struct StLevel {
        Level level;
        std::map<Monomial, Block> blocks;
    };
    std::vector<std::vector<StLevel>> grid(static_cast<size_t>(S) + 2);
    for (int s = 0; s <= S + 1; ++s) {
        grid[static_cast<size_t>(s)].resize(static_cast<size_t>(N) + 1);
        for (int t = 0; t <= N; ++t) {
            if (t < s) continue;  // each slot has positive degree
            StLevel& sl = grid[static_cast<size_t>(s)][static_cast<size_t>(t)];
            sl.level = enumerate_words(a, s, t);
            sl.blocks = split_blocks(a, sl.level);
        }
    }

    // Rank jobs for every differential block d_s : (s, mu) -> (s-1, mu).
    std::vector<BlockJob> all_jobs;
    double total_work = 0;
    for (int s = 2; s <= S + 1; ++s)
        for (int t = s; t <= N; ++t) {
            const StLevel& up = grid[static_cast<size_t>(s)][static_cast<size_t>(t)];
            const StLevel& low = grid[static_cast<size_t>(s - 1)][static_cast<size_t>(t)];
            for (const auto& [mu, ub] : up.blocks) {
                auto it = low.blocks.find(mu);
                if (it == low.blocks.end()) continue;
                const double small = static_cast<double>(
                    std::min(ub.word_ids.size(), it->second.word_ids.size()));
                const double big = static_cast<double>(
                    std::max(ub.word_ids.size(), it->second.word_ids.size()));
                const double cost = small * small / 4.0 * (big / 64.0 + 1);
                total_work += cost;
                all_jobs.push_back(BlockJob{s, t, &ub, &it->second, cost});
            }
        }
    if (total_work > limits.max_work) return std::nullopt;

    // Big blocks first for balance; results keyed by job index.
    std::vector<size_t> order(all_jobs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return all_jobs[x].cost > all_jobs[y].cost;
    });
    std::vector<size_t> ranks(all_jobs.size(), 0);
    parallel_for(order.size(), jobs, [&](size_t oi) {
        const BlockJob& job = all_jobs[order[oi]];
        const StLevel& up = grid[static_cast<size_t>(job.s)][static_cast<size_t>(job.t)];
        const StLevel& low =
            grid[static_cast<size_t>(job.s - 1)][static_cast<size_t>(job.t)];
        ranks[order[oi]] = block_rank(a, up.level, *job.upper, low.level, *job.lower);
    });

    // rank d_s per (s,t); d_1 and d_{s > S+1} are zero.
    std::vector<std::vector<long long>> rank_st(
        static_cast<size_t>(S) + 2, std::vector<long long>(static_cast<size_t>(N) + 1, 0));
    for (size_t i = 0; i < all_jobs.size(); ++i)
        rank_st[static_cast<size_t>(all_jobs[i].s)][static_cast<size_t>(all_jobs[i].t)] +=
            static_cast<long long>(ranks[i]);

    TorTable table(S, N, TorProvenance::Computed);
    for (int s = 0; s <= S; ++s)
        for (int t = s; t <= N; ++t) {
            const long long words = static_cast<long long>(
                grid[static_cast<size_t>(s)][static_cast<size_t>(t)].level.count);
            long long h = words - rank_st[static_cast<size_t>(s)][static_cast<size_t>(t)];
            if (s + 1 <= S + 1)
                h -= rank_st[static_cast<size_t>(s) + 1][static_cast<size_t>(t)];
            if (h != 0) table.set_dim(s, t, h);
        }

    if (a.torus_rank() > 0) {
        // Tensor in the group-algebra factor: Tor gains (1+sigma)^r.
        TorTable full(S, N, TorProvenance::Computed);
        for (int s = 0; s <= S; ++s)
            for (int t = 0; t <= N; ++t) {
                BigInt acc(0);
                for (int j = 0; j <= std::min(s, a.torus_rank()); ++j)
                    acc += binomial(a.torus_rank(), j) * table.dim(s - j, t);
                if (acc != 0) full.set_dim(s, t, to_ll_checked(acc));
            }
        return full;
    }
    return table;
}

TorTable tor_dims(const PresentedAlgebra& a, int S, int N, int jobs) {
    std::optional<TorTable> t = tor_dims_capped(a, S, N, TorLimits{}, jobs);
    return *t;
}

BiSeries analytic_tor_biseries(const PresentedAlgebra& a, int S, int N) {
    BiSeries acc = BiSeries::one(S, N);
    const std::vector<int> counts = a.generator_counts();
    for (int d = 1; d <= std::min(N, a.trunc()); ++d)
        if (counts[static_cast<size_t>(d)] > 0)
            acc = mul(acc, BiSeries::binomial_factor(S, N, 1, d,
                                                     counts[static_cast<size_t>(d)]));
    if (a.torus_rank() > 0)
        acc = mul(acc, BiSeries::binomial_factor(S, N, 1, 0, a.torus_rank()));
    return acc;
}

TorTable analytic_tor(const PresentedAlgebra& a, int S, int N) {
    const BiSeries b = analytic_tor_biseries(a, S, N);
    TorTable table(S, N, TorProvenance::Analytic);
    for (int s = 0; s <= S; ++s)
        for (int t = 0; t <= N; ++t) {
            const BigInt& v = b.at(s, t);
            if (v != 0) table.set_dim(s, t, to_ll_checked(v));
        }
    return table;
}

bool tor_one_generated_check(const TorTable& t, int up_to_degree) {
    const int needed = up_to_degree + 1;
    if (t.s_max() < needed || t.t_max() < needed)
        throw std::invalid_argument("incomplete table for the requested degree");
    BiSeries expect = BiSeries::one(t.s_max(), t.t_max());
    for (int col = 0; col <= t.t_max(); ++col) {
        const long long d = t.dim(1, col);
        if (d > 0)
            expect = mul(expect, BiSeries::binomial_factor(t.s_max(), t.t_max(), 1, col, d));
    }
    for (int s = 0; s <= t.s_max(); ++s)
        for (int tt = 0; tt <= t.t_max(); ++tt) {
            if (s + tt > needed) continue;
            if (BigInt(t.dim(s, tt)) != expect.at(s, tt)) return false;
        }
    return true;
}

/* ---- edge homomorphism -------------------------------------------------- */

namespace detail {

EdgeHom edge_hom_from_boundaries(const PresentedAlgebra& a, int ell,
                                 const BitMatrix& boundary_rows) {
    const auto& monos = a.monomials(ell);
    const size_t b1 = monos.size();
    if (boundary_rows.cols() != b1)
        throw std::invalid_argument("boundary row width must match B_{1,ell}");

    // RREF of the boundary subspace; quotient coordinates are the free
    // columns.
    BitMatrix red = boundary_rows;
    std::vector<std::pair<size_t, size_t>> pivots;
    {
        size_t next = 0;
        for (size_t c = 0; c < red.cols() && next < red.rows(); ++c) {
            size_t p = red.rows();
            for (size_t r = next; r < red.rows(); ++r)
                if (red.get(r, c)) { p = r; break; }
            if (p == red.rows()) continue;
            if (p != next)
                for (size_t cc = 0; cc < red.cols(); ++cc) {
                    const bool tmp = red.get(p, cc);
                    red.set(p, cc, red.get(next, cc));
                    red.set(next, cc, tmp);
                }
            for (size_t r = 0; r < red.rows(); ++r)
                if (r != next && red.get(r, c)) red.xor_row_into(next, r);
            pivots.emplace_back(next, c);
            ++next;
        }
    }
    std::vector<bool> is_pivot(b1, false);
    for (const auto& [r, c] : pivots) is_pivot[c] = true;
    std::vector<size_t> free_pos(b1, 0);
    size_t nfree = 0;
    for (size_t c = 0; c < b1; ++c)
        if (!is_pivot[c]) free_pos[c] = nfree++;

    BitMatrix quotient(nfree, b1);
    for (size_t c = 0; c < b1; ++c) {
        if (!is_pivot[c]) {
            quotient.set(free_pos[c], c, true);
        } else {
            size_t row = 0;
            for (const auto& [r, pc] : pivots)
                if (pc == c) { row = r; break; }
            for (size_t f = 0; f < b1; ++f)
                if (!is_pivot[f] && red.get(row, f)) quotient.set(free_pos[f], c, true);
        }
    }

    // Q(A)_ell has the degree-ell generators as basis.
    std::vector<int> gen_ids;
    for (size_t g = 0; g < a.generator_degrees().size(); ++g)
        if (a.generator_degrees()[g] == ell) gen_ids.push_back(static_cast<int>(g));

    std::vector<std::vector<std::string>> qlabels(static_cast<size_t>(ell) + 1);
    for (int g : gen_ids) qlabels[static_cast<size_t>(ell)].push_back("x" + std::to_string(g));
    std::vector<std::vector<std::string>> tlabels(static_cast<size_t>(ell) + 1);
    for (size_t i = 0; i < nfree; ++i)
        tlabels[static_cast<size_t>(ell)].push_back("tor1_" + std::to_string(i));

    BitMatrix block(nfree, gen_ids.size());
    for (size_t j = 0; j < gen_ids.size(); ++j) {
        const Monomial word{{gen_ids[j], 1}};
        const long long idx = a.monomial_index(ell, word);
        BitVec cls(b1);
        cls.set(static_cast<size_t>(idx), true);
        const BitVec q = quotient.apply(cls);
        for (size_t r = 0; r < nfree; ++r)
            if (q.get(r)) block.set(r, j, true);
    }
    const bool injective = block.rank() == gen_ids.size();

    LinMap map(GradedVS(std::move(qlabels)), GradedVS(std::move(tlabels)), 0);
    map.set_block(ell, block);
    return EdgeHom{std::move(map), injective, ell, static_cast<long long>(nfree),
                   std::move(quotient)};
}

}  // namespace detail

EdgeHom edge_hom(const PresentedAlgebra& a, int ell) {
    if (ell < 1 || ell > a.trunc())
        throw std::out_of_range("edge_hom: degree out of range");
    // Boundaries: d[m1|m2] = [m1 m2], one row per (2, ell) bar word.
    const Level words2 = enumerate_words(a, 2, ell);
    const size_t b1 = a.monomials(ell).size();
    BitMatrix boundaries(words2.count, b1);
    for (size_t w = 0; w < words2.count; ++w) {
        const Handle h1 = words2.flat[2 * w], h2 = words2.flat[2 * w + 1];
        const Monomial prod =
            monomial_mul(a.monomials(handle_degree(h1))[handle_index(h1)],
                         a.monomials(handle_degree(h2))[handle_index(h2)]);
        boundaries.set(w, static_cast<size_t>(a.monomial_index(ell, prod)), true);
    }
    return detail::edge_hom_from_boundaries(a, ell, boundaries);
}

BitVec edge_class_of_monomial(const EdgeHom& e, const PresentedAlgebra& a,
                              const Monomial& m) {
    const long long idx = a.monomial_index(e.ell, m);
    if (idx < 0) throw std::invalid_argument("monomial not in the requested degree");
    BitVec cls(a.monomials(e.ell).size());
    cls.set(static_cast<size_t>(idx), true);
    return e.quotient.apply(cls);
}

}  // namespace hopf2
