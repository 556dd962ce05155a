#include "setmap/mapping.hpp"

#include "setmap/combinat.hpp"
#include "setmap/rng.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace setmap {

namespace {

    constexpr std::uint64_t kTagUniform = 0x756e6966;  // "unif"
    constexpr std::uint64_t kTagIncident = 0x696e6364; // "incd"

    // dense iff the full table stays comfortably in memory
    constexpr std::uint64_t kDenseByteLimit = 1ull << 26;

    bool dense_feasible(std::uint32_t host, std::uint32_t k, std::uint32_t l)
    {
        const std::uint64_t edges = binom(host, k);
        return edges < (1ull << 32) && edges * l * sizeof(std::uint32_t) <= kDenseByteLimit;
    }

    std::uint64_t edge_key(std::uint64_t seed, std::uint64_t tag,
                           std::span<const std::uint32_t> edge)
    {
        std::uint64_t key = absorb(seed, tag);
        for (const auto v : edge)
            key = absorb(key, v);
        return key;
    }

} // namespace

std::uint64_t SetMapping::domain_size() const noexcept
{
    return binom(host_, k_);
}

void SetMapping::eval_lazy(std::span<const std::uint32_t> edge,
                           std::vector<std::uint32_t>& out) const
{
    const Kind kind = kind_ == Kind::reduced ? inner_kind_ : kind_;
    const std::uint32_t l = kind_ == Kind::reduced ? inner_l_ : l_;
    out.clear();
    if (kind == Kind::uniform_disjoint) {
        Rng rng(edge_key(seed_, kTagUniform, edge));
        sample_distinct(rng, host_ - k_, l, out);
        for (auto& v : out)
            v = nth_outside(v, edge);
    } else { // incident_edge: arity 2, image shares exactly one endpoint
        Rng rng(edge_key(seed_, kTagIncident, edge));
        const std::uint64_t outside = host_ - 2;
        const std::uint64_t t = rng.below(2 * outside);
        const std::uint32_t shared = t < outside ? edge[0] : edge[1];
        const std::uint32_t other = nth_outside(t % outside, edge);
        out.push_back(shared);
        out.push_back(other);
    }
    std::sort(out.begin(), out.end());

    if (kind_ == Kind::reduced) {
        // smallest vertex of f(e) \ e
        std::uint32_t pick = host_;
        for (const auto w : out) {
            if (std::find(edge.begin(), edge.end(), w) == edge.end()) {
                pick = w;
                break;
            }
        }
        if (pick == host_)
            throw std::runtime_error("reduce_to_disjoint: image contained in edge");
        out.assign(1, pick);
    }
}

void SetMapping::eval_unchecked(std::span<const std::uint32_t> edge,
                                std::vector<std::uint32_t>& out) const
{
    if (kind_ == Kind::table) {
        const std::uint64_t r = edge_rank(edge);
        out.assign(table_.begin() + static_cast<std::ptrdiff_t>(r * l_),
                   table_.begin() + static_cast<std::ptrdiff_t>((r + 1) * l_));
        return;
    }
    eval_lazy(edge, out);
}

void SetMapping::eval_pair(std::uint32_t u, std::uint32_t v,
                           std::vector<std::uint32_t>& out) const
{
    const std::uint32_t e[2] = {u, v};
    if (kind_ == Kind::table) {
        const std::uint64_t r = pair_rank(u, v);
        out.assign(table_.begin() + static_cast<std::ptrdiff_t>(r * l_),
                   table_.begin() + static_cast<std::ptrdiff_t>((r + 1) * l_));
        return;
    }
    eval_lazy(std::span<const std::uint32_t>(e, 2), out);
}

void SetMapping::eval(std::span<const std::uint32_t> edge,
                      std::vector<std::uint32_t>& out) const
{
    if (edge.size() != k_)
        throw std::invalid_argument("eval: edge has wrong arity");
    for (std::size_t i = 0; i < edge.size(); ++i) {
        if (i > 0 && edge[i] <= edge[i - 1])
            throw std::invalid_argument("eval: edge must be sorted and duplicate-free");
        if (edge[i] >= host_)
            throw std::invalid_argument("eval: edge vertex out of range");
    }
    eval_unchecked(edge, out);
}

std::vector<std::uint32_t> SetMapping::eval(std::span<const std::uint32_t> edge) const
{
    std::vector<std::uint32_t> out;
    eval(edge, out);
    return out;
}

SetMapping SetMapping::densified() const
{
    if (kind_ == Kind::table)
        return *this;
    if (!dense_feasible(host_, k_, l_))
        throw std::invalid_argument("densified: table would exceed the dense size limit");
    const std::uint64_t edges = binom(host_, k_);
    std::vector<std::uint32_t> table(edges * l_);
    std::vector<std::uint32_t> img;
    const SetMapping& self = *this;
    for_each_edge(host_, k_, [&](std::span<const std::uint32_t> e) {
        self.eval_unchecked(e, img);
        const std::uint64_t r = edge_rank(e);
        std::copy(img.begin(), img.end(), table.begin() + static_cast<std::ptrdiff_t>(r * l_));
    });
    SetMapping out;
    out.kind_ = Kind::table;
    out.host_ = host_;
    out.k_ = k_;
    out.l_ = l_;
    out.a_ = a_;
    out.seed_ = seed_;
    out.table_ = std::move(table);
    return out;
}

SetMapping SetMapping::from_table(std::uint32_t host, std::uint32_t k, std::uint32_t l,
                                  std::uint32_t a, std::vector<std::uint32_t> table)
{
    const std::uint64_t edges = binom(host, k);
    if (table.size() != edges * l)
        throw std::invalid_argument("from_table: table size does not match C(N,k)*l");
    SetMapping out;
    out.kind_ = Kind::table;
    out.host_ = host;
    out.k_ = k;
    out.l_ = l;
    out.a_ = a;
    out.table_ = std::move(table);

    // canonicalize and validate rows against the invariants
    std::vector<std::uint32_t> img(l);
    for_each_edge(host, k, [&](std::span<const std::uint32_t> e) {
        const std::uint64_t r = edge_rank(e);
        auto row = out.table_.begin() + static_cast<std::ptrdiff_t>(r * l);
        std::sort(row, row + l);
        std::uint32_t overlap = 0;
        for (std::uint32_t i = 0; i < l; ++i) {
            const std::uint32_t w = *(row + i);
            if (w >= host)
                throw std::invalid_argument("from_table: image vertex out of range");
            if (i > 0 && w == *(row + i - 1))
                throw std::invalid_argument("from_table: repeated image vertex");
            if (std::find(e.begin(), e.end(), w) != e.end())
                ++overlap;
        }
        if (overlap > a)
            throw std::invalid_argument("from_table: image overlaps edge beyond budget");
    });
    return out;
}

SetMapping gen_uniform_disjoint(std::uint32_t host, std::uint32_t k, std::uint32_t l,
                                std::uint64_t seed, Backing backing)
{
    if (k < 2 || l < 1)
        throw std::invalid_argument("gen_uniform_disjoint: need k >= 2, l >= 1");
    if (host < k + l)
        throw std::invalid_argument("gen_uniform_disjoint: host too small (need N >= k + l)");
    SetMapping f;
    f.kind_ = SetMapping::Kind::uniform_disjoint;
    f.host_ = host;
    f.k_ = k;
    f.l_ = l;
    f.a_ = 0;
    f.seed_ = seed;
    if (backing == Backing::dense ||
        (backing == Backing::automatic && dense_feasible(host, k, l)))
        return f.densified();
    return f;
}

SetMapping gen_random_disjoint_edge(std::uint32_t host, std::uint64_t seed, Backing backing)
{
    if (host < 4)
        throw std::invalid_argument("gen_random_disjoint_edge: need N >= 4");
    return gen_uniform_disjoint(host, 2, 2, seed, backing);
}

SetMapping gen_random_incident_edge(std::uint32_t host, std::uint64_t seed, Backing backing)
{
    if (host < 3)
        throw std::invalid_argument("gen_random_incident_edge: need N >= 3");
    SetMapping f;
    f.kind_ = SetMapping::Kind::incident_edge;
    f.host_ = host;
    f.k_ = 2;
    f.l_ = 2;
    f.a_ = 1;
    f.seed_ = seed;
    if (backing == Backing::dense ||
        (backing == Backing::automatic && dense_feasible(host, 2, 2)))
        return f.densified();
    return f;
}

SetMapping reduce_to_disjoint(const SetMapping& f)
{
    if (f.arity() != 2 || f.image_size() != 2 || f.overlap_budget() > 1)
        throw std::invalid_argument("reduce_to_disjoint: need arity 2, l = 2, a <= 1");

    if (f.is_dense()) {
        const std::uint64_t edges = binom(f.host_, 2);
        std::vector<std::uint32_t> table(edges);
        std::vector<std::uint32_t> img;
        for_each_edge(f.host_, 2, [&](std::span<const std::uint32_t> e) {
            f.eval_unchecked(e, img);
            std::uint32_t pick = f.host_;
            for (const auto w : img) {
                if (w != e[0] && w != e[1]) {
                    pick = w;
                    break;
                }
            }
            if (pick == f.host_)
                throw std::invalid_argument("reduce_to_disjoint: some f(e) is contained in e");
            table[edge_rank(e)] = pick;
        });
        return SetMapping::from_table(f.host_, 2, 1, 0, std::move(table));
    }

    SetMapping out;
    out.kind_ = SetMapping::Kind::reduced;
    out.inner_kind_ = f.kind_;
    out.host_ = f.host_;
    out.k_ = 2;
    out.l_ = 1;
    out.a_ = 0;
    out.inner_l_ = f.l_;
    out.seed_ = f.seed_;
    return out;
}

SetMapping parse_mapping(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;

    std::uint32_t host = 0, k = 0, l = 0, a = 0;
    bool have_header = false;
    std::vector<std::uint32_t> table;
    std::vector<bool> covered;
    std::uint64_t edges = 0;

    auto fail = [&](const std::string& what) -> void {
        throw std::invalid_argument("mapping file line " + std::to_string(lineno) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;

        if (!have_header) {
            std::istringstream hs(line);
            if (!(hs >> host >> k >> l >> a))
                fail("expected header \"N k l a\"");
            std::string rest;
            if (hs >> rest)
                fail("trailing tokens after header");
            if (k < 2 || l < 1 || host < k)
                fail("inadmissible header values");
            edges = binom(host, k);
            if (!(edges < (1ull << 32) && edges * l * sizeof(std::uint32_t) <= (1ull << 28)))
                fail("mapping too large for a dense table");
            table.assign(edges * l, 0);
            covered.assign(edges, false);
            have_header = true;
            continue;
        }

        const auto colon = line.find(':');
        if (colon == std::string::npos)
            fail("expected \"v1 .. vk : w1 .. wl\"");
        std::istringstream left(line.substr(0, colon));
        std::istringstream right(line.substr(colon + 1));

        std::vector<std::uint32_t> e;
        std::uint32_t v = 0;
        while (left >> v)
            e.push_back(v);
        if (e.size() != k)
            fail("edge has wrong arity");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= host)
                fail("edge vertex out of range");
            if (i > 0 && e[i] <= e[i - 1])
                fail("edge not in canonical sorted form");
        }
        std::vector<std::uint32_t> img;
        while (right >> v)
            img.push_back(v);
        if (img.size() != l)
            fail("image has wrong size");

        const std::uint64_t r = edge_rank(e);
        if (covered[r])
            fail("edge listed twice");
        covered[r] = true;
        std::sort(img.begin(), img.end());
        std::uint32_t overlap = 0;
        for (std::size_t i = 0; i < img.size(); ++i) {
            if (img[i] >= host)
                fail("image vertex out of range");
            if (i > 0 && img[i] == img[i - 1])
                fail("repeated image vertex");
            if (std::find(e.begin(), e.end(), img[i]) != e.end())
                ++overlap;
        }
        if (overlap > a)
            fail("image overlaps edge beyond budget a");
        std::copy(img.begin(), img.end(), table.begin() + static_cast<std::ptrdiff_t>(r * l));
    }

    if (!have_header)
        throw std::invalid_argument("mapping file: missing header");
    for (std::uint64_t r = 0; r < edges; ++r) {
        if (!covered[r])
            throw std::invalid_argument("mapping file: not all canonical edges are covered");
    }
    return SetMapping::from_table(host, k, l, a, std::move(table));
}

std::string serialize_mapping(const SetMapping& f)
{
    if (!f.is_dense())
        throw std::invalid_argument("serialize_mapping: dense mappings only");
    std::ostringstream out;
    out << f.host_size() << " " << f.arity() << " " << f.image_size() << " "
        << f.overlap_budget() << "\n";
    std::vector<std::uint32_t> img;
    for_each_edge(f.host_size(), f.arity(), [&](std::span<const std::uint32_t> e) {
        f.eval_unchecked(e, img);
        bool sep = false;
        for (const auto v : e) {
            out << (sep ? " " : "") << v;
            sep = true;
        }
        out << " :";
        for (const auto w : img)
            out << " " << w;
        out << "\n";
    });
    return out.str();
}

} // namespace setmap
