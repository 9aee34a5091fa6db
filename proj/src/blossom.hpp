#pragma once

// Primal-dual weighted blossom algorithm for minimum-weight perfect matching
// on general graphs.
//
// The solver works in the maximisation form of Edmonds' algorithm as laid out
// by Galil ("Efficient algorithms for finding maximum matching in graphs",
// 1986): every weight is negated and doubled, vertex duals are kept at twice
// their LP value so that S-to-S edge slacks stay even, and blossom duals are
// only touched at the top level. Because the target is a perfect matching,
// vertex duals are free in sign and the single-vertex dual bound of the
// maximum-weight variant is never applied.
//
// Each stage grows alternating trees from every exposed vertex and ends at
// the first augmentation, so at most n/2 stages run. A stage costs
// O(n + m) per dual adjustment and O(n) adjustments, giving O(n^3) worst
// case. Before the first stage the vertex duals are lowered greedily until
// every vertex has a tight edge, and tight edges are matched Karp-Sipser style; on
// lattice-like inputs this leaves only a small fraction of vertices exposed.

#include <algorithm>
#include <cassert>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

namespace cyclegsp::detail {

template <class T>
struct WeightedPair {
    int u;
    int v;
    T w;
};

template <class T>
class BlossomMatcher {
public:
    BlossomMatcher(int n, std::span<const WeightedPair<T>> edges)
        : n_(n), m_(static_cast<int>(edges.size()))
    {
        edges_.reserve(edges.size());
        for (const auto& e : edges)
            edges_.push_back({e.u, e.v, T(-2) * e.w});
        endpoint_.resize(2 * static_cast<std::size_t>(m_));
        neighbend_.resize(n_);
        for (int k = 0; k < m_; ++k) {
            endpoint_[2 * k] = edges_[k].i;
            endpoint_[2 * k + 1] = edges_[k].j;
            neighbend_[edges_[k].i].push_back(2 * k + 1);
            neighbend_[edges_[k].j].push_back(2 * k);
        }
    }

    /// mate[v] for every vertex, or nullopt when no perfect matching exists.
    std::optional<std::vector<int>> solve()
    {
        if (n_ % 2 != 0)
            return std::nullopt;
        for (int v = 0; v < n_; ++v)
            if (neighbend_[v].empty())
                return std::nullopt;

        init();
        jump_start();

        int exposed = 0;
        for (int v = 0; v < n_; ++v)
            exposed += mate_[v] == -1;

        while (exposed > 0) {
            if (!run_stage())
                break;
            exposed -= 2;
            for (int b = n_; b < 2 * n_; ++b) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == T(0))
                    expand_blossom(b, true);
            }
        }
        if (exposed > 0)
            return std::nullopt;

        std::vector<int> mate(n_);
        for (int v = 0; v < n_; ++v)
            mate[v] = endpoint_[mate_[v]];
        return mate;
    }

private:
    struct Edge {
        int i;
        int j;
        T wt;
    };

    T slack(int k) const
    {
        const auto& e = edges_[k];
        return dualvar_[e.i] + dualvar_[e.j] - T(2) * e.wt;
    }

    static int wrap(int j, int len) { return ((j % len) + len) % len; }

    void init()
    {
        const int nn = 2 * n_;
        mate_.assign(n_, -1);
        label_.assign(nn, 0);
        labelend_.assign(nn, -1);
        uf_.resize(n_);
        set_size_.assign(n_, 1);
        top_of_.resize(n_);
        for (int v = 0; v < n_; ++v)
            uf_[v] = top_of_[v] = v;
        blossomparent_.assign(nn, -1);
        blossomchilds_.assign(nn, {});
        blossombase_.assign(nn, -1);
        for (int v = 0; v < n_; ++v)
            blossombase_[v] = v;
        blossomendps_.assign(nn, {});
        bestedge_.assign(nn, -1);
        blossombestedges_.assign(nn, {});
        has_bestedges_.assign(nn, 0);
        unusedblossoms_.clear();
        for (int b = nn - 1; b >= n_; --b)
            unusedblossoms_.push_back(b);
        dualvar_.assign(nn, T(0));
        allowedge_.assign(m_, 0);
        bestedgeto_.assign(nn, -1);
    }

    // Feasible duals with at least one tight edge per vertex, then a greedy
    // matching on tight edges.
    void jump_start()
    {
        for (int v = 0; v < n_; ++v) {
            T best = edges_[neighbend_[v].front() / 2].wt;
            for (int p : neighbend_[v])
                if (edges_[p / 2].wt > best)
                    best = edges_[p / 2].wt;
            dualvar_[v] = best;
        }
        for (int v = 0; v < n_; ++v) {
            bool first = true;
            T need{};
            for (int p : neighbend_[v]) {
                const T req = T(2) * edges_[p / 2].wt - dualvar_[endpoint_[p]];
                if (first || req > need) {
                    need = req;
                    first = false;
                }
            }
            dualvar_[v] = need;
        }
        karp_sipser();
    }

    // Karp-Sipser on the tight subgraph: match forced (degree-one) vertices
    // first, otherwise an arbitrary tight edge.
    void karp_sipser()
    {
        std::vector<int> deg(n_, 0);
        for (int k = 0; k < m_; ++k) {
            if (slack(k) == T(0)) {
                ++deg[edges_[k].i];
                ++deg[edges_[k].j];
            }
        }
        std::vector<int> forced;
        for (int v = 0; v < n_; ++v)
            if (deg[v] == 1)
                forced.push_back(v);

        auto take = [&](int v, int p) {
            const int w = endpoint_[p];
            mate_[v] = p;
            mate_[w] = p ^ 1;
            for (int x : {v, w}) {
                for (int q : neighbend_[x]) {
                    const int y = endpoint_[q];
                    if (mate_[y] == -1 && slack(q / 2) == T(0) && --deg[y] == 1)
                        forced.push_back(y);
                }
            }
        };
        auto free_tight = [&](int v) {
            for (int p : neighbend_[v])
                if (mate_[endpoint_[p]] == -1 && slack(p / 2) == T(0))
                    return p;
            return -1;
        };

        int scan = 0;
        for (;;) {
            while (!forced.empty()) {
                const int v = forced.back();
                forced.pop_back();
                if (mate_[v] != -1)
                    continue;
                if (const int p = free_tight(v); p != -1)
                    take(v, p);
            }
            while (scan < n_ && (mate_[scan] != -1 || deg[scan] == 0))
                ++scan;
            if (scan == n_)
                break;
            const int p = free_tight(scan);
            if (p == -1) {
                deg[scan] = 0;
                continue;
            }
            take(scan, p);
        }
    }

    void blossom_leaves(int b, std::vector<int>& out) const
    {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        leaf_stack_.clear();
        leaf_stack_.push_back(b);
        while (!leaf_stack_.empty()) {
            const int t = leaf_stack_.back();
            leaf_stack_.pop_back();
            if (t < n_) {
                out.push_back(t);
                continue;
            }
            const auto& ch = blossomchilds_[t];
            for (auto it = ch.rbegin(); it != ch.rend(); ++it)
                leaf_stack_.push_back(*it);
        }
    }

    std::vector<int> leaves_of(int b) const
    {
        std::vector<int> out;
        blossom_leaves(b, out);
        return out;
    }

    int find(int v)
    {
        while (uf_[v] != v) {
            uf_[v] = uf_[uf_[v]];
            v = uf_[v];
        }
        return v;
    }

    int top(int v) { return top_of_[find(v)]; }

    void regroup(int s)
    {
        regroup_.clear();
        blossom_leaves(s, regroup_);
        const int root = regroup_.front();
        for (int leaf : regroup_)
            uf_[leaf] = root;
        set_size_[root] = static_cast<int>(regroup_.size());
        top_of_[root] = s;
    }

    void assign_label(int w, int t, int p)
    {
        for (;;) {
            const int b = top(w);
            assert(label_[w] == 0 && label_[b] == 0);
            label_[w] = label_[b] = t;
            labelend_[w] = labelend_[b] = p;
            bestedge_[w] = bestedge_[b] = -1;
            if (t == 1) {
                blossom_leaves(b, queue_);
                return;
            }
            const int base = blossombase_[b];
            assert(mate_[base] >= 0);
            w = endpoint_[mate_[base]];
            t = 1;
            p = mate_[base] ^ 1;
        }
    }

    int scan_blossom(int v, int w)
    {
        scan_path_.clear();
        int base = -1;
        while (v != -1 || w != -1) {
            int b = top(v);
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            assert(label_[b] == 1);
            scan_path_.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = top(v);
                assert(label_[b] == 2);
                v = endpoint_[labelend_[b]];
            }
            if (w != -1)
                std::swap(v, w);
        }
        for (int b : scan_path_)
            label_[b] = 1;
        return base;
    }

    void add_blossom(int base, int k)
    {
        int v = edges_[k].i;
        int w = edges_[k].j;
        const int bb = top(base);
        int bv = top(v);
        int bw = top(w);
        const int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        auto& path = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = top(v);
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = top(w);
        }
        assert(label_[bb] == 1);
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = T(0);
        // Only former T-children have leaves that still need scanning; the
        // vertex sets are merged without touching every leaf.
        int root = -1;
        for (int sub : path) {
            if (label_[sub] == 2)
                blossom_leaves(sub, queue_);
            int r = find(blossombase_[sub]);
            if (root == -1) {
                root = r;
            } else {
                if (set_size_[r] > set_size_[root])
                    std::swap(r, root);
                uf_[r] = root;
                set_size_[root] += set_size_[r];
            }
        }
        top_of_[root] = b;

        touched_.clear();
        auto consider = [&](int kk) {
            int i = edges_[kk].i;
            int j = edges_[kk].j;
            if (top(j) == b)
                std::swap(i, j);
            const int bj = top(j);
            if (bj != b && label_[bj] == 1 && (bestedgeto_[bj] == -1 || slack(kk) < slack(bestedgeto_[bj]))) {
                if (bestedgeto_[bj] == -1)
                    touched_.push_back(bj);
                bestedgeto_[bj] = kk;
            }
        };
        for (int sub : path) {
            if (!has_bestedges_[sub]) {
                for (int leaf : leaves_of(sub))
                    for (int p : neighbend_[leaf])
                        consider(p / 2);
            } else {
                for (int kk : blossombestedges_[sub])
                    consider(kk);
            }
            blossombestedges_[sub].clear();
            has_bestedges_[sub] = 0;
            bestedge_[sub] = -1;
        }
        auto& list = blossombestedges_[b];
        list.clear();
        for (int bj : touched_) {
            list.push_back(bestedgeto_[bj]);
            bestedgeto_[bj] = -1;
        }
        has_bestedges_[b] = 1;
        bestedge_[b] = -1;
        for (int kk : list)
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b]))
                bestedge_[b] = kk;
    }

    void expand_blossom(int b, bool endstage)
    {
        const std::vector<int> childs = blossomchilds_[b];
        for (int s : childs) {
            blossomparent_[s] = -1;
            if (s < n_) {
                uf_[s] = top_of_[s] = s;
                set_size_[s] = 1;
            } else if (endstage && dualvar_[s] == T(0)) {
                expand_blossom(s, endstage);
            } else {
                regroup(s);
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto& endps = blossomendps_[b];
            const int len = static_cast<int>(childs.size());
            const int entrychild = top(endpoint_[labelend_[b] ^ 1]);
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep;
            int endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[endps[wrap(j - endptrick, len)] / 2] = 1;
                j += jstep;
                p = endps[wrap(j - endptrick, len)] ^ endptrick;
                allowedge_[p / 2] = 1;
                j += jstep;
            }
            int bv = childs[wrap(j, len)];
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (childs[wrap(j, len)] != entrychild) {
                bv = childs[wrap(j, len)];
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for (int leaf : leaves_of(bv)) {
                    if (label_[leaf] != 0) {
                        found = leaf;
                        break;
                    }
                }
                if (found != -1) {
                    assert(label_[found] == 2);
                    assert(top(found) == bv);
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
        bestedge_[b] = -1;
        unusedblossoms_.push_back(b);
    }

    void augment_blossom(int b, int v)
    {
        int t = v;
        while (blossomparent_[t] != b)
            t = blossomparent_[t];
        if (t >= n_)
            augment_blossom(t, v);
        auto& childs = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        const int len = static_cast<int>(childs.size());
        const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep;
        int endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = childs[wrap(j, len)];
            const int p = endps[wrap(j - endptrick, len)] ^ endptrick;
            if (t >= n_)
                augment_blossom(t, endpoint_[p]);
            j += jstep;
            t = childs[wrap(j, len)];
            if (t >= n_)
                augment_blossom(t, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
        assert(blossombase_[b] == v);
    }

    void augment_matching(int k)
    {
        const int ends[2][2] = {{edges_[k].i, 2 * k + 1}, {edges_[k].j, 2 * k}};
        for (const auto& sp : ends) {
            int s = sp[0];
            int p = sp[1];
            for (;;) {
                const int bs = top(s);
                assert(label_[bs] == 1);
                if (bs >= n_)
                    augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1)
                    break;
                const int t = endpoint_[labelend_[bs]];
                const int bt = top(t);
                assert(label_[bt] == 2);
                s = endpoint_[labelend_[bt]];
                const int j = endpoint_[labelend_[bt] ^ 1];
                assert(blossombase_[bt] == t);
                if (bt >= n_)
                    augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    // One stage: grow alternating trees until an augmentation happens.
    // Returns false when no augmenting path exists.
    bool run_stage()
    {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n_; b < 2 * n_; ++b) {
            blossombestedges_[b].clear();
            has_bestedges_[b] = 0;
        }
        std::fill(allowedge_.begin(), allowedge_.end(), 0);
        queue_.clear();
        for (int v = 0; v < n_; ++v)
            if (mate_[v] == -1 && label_[top(v)] == 0)
                assign_label(v, 1, -1);

        for (;;) {
            while (!queue_.empty()) {
                const int v = queue_.back();
                queue_.pop_back();
                assert(label_[top(v)] == 1);
                for (int p : neighbend_[v]) {
                    const int k = p / 2;
                    const int w = endpoint_[p];
                    if (top(v) == top(w))
                        continue;
                    T kslack{};
                    if (!allowedge_[k]) {
                        kslack = slack(k);
                        if (kslack <= T(0))
                            allowedge_[k] = 1;
                    }
                    if (allowedge_[k]) {
                        if (label_[top(w)] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[top(w)] == 1) {
                            const int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                return true;
                            }
                        } else if (label_[w] == 0) {
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[top(w)] == 1) {
                        const int b = top(v);
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b]))
                            bestedge_[b] = k;
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w]))
                            bestedge_[w] = k;
                    }
                }
            }

            int deltatype = -1;
            T delta{};
            int deltaedge = -1;
            int deltablossom = -1;
            for (int v = 0; v < n_; ++v) {
                if (label_[top(v)] == 0 && bestedge_[v] != -1) {
                    const T d = slack(bestedge_[v]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * n_; ++b) {
                if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    const T d = half(slack(bestedge_[b]));
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = n_; b < 2 * n_; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                    (deltatype == -1 || dualvar_[b] < delta)) {
                    delta = dualvar_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1)
                return false;

            for (int v = 0; v < n_; ++v) {
                const int l = label_[top(v)];
                if (l == 1)
                    dualvar_[v] -= delta;
                else if (l == 2)
                    dualvar_[v] += delta;
            }
            for (int b = n_; b < 2 * n_; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                    if (label_[b] == 1)
                        dualvar_[b] += delta;
                    else if (label_[b] == 2)
                        dualvar_[b] -= delta;
                }
            }

            if (deltatype == 2) {
                allowedge_[deltaedge] = 1;
                int i = edges_[deltaedge].i;
                int j = edges_[deltaedge].j;
                if (label_[top(i)] == 0)
                    std::swap(i, j);
                assert(label_[top(i)] == 1);
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[deltaedge] = 1;
                const int i = edges_[deltaedge].i;
                assert(label_[top(i)] == 1);
                queue_.push_back(i);
            } else {
                expand_blossom(deltablossom, false);
            }
        }
    }

    static T half(T x)
    {
        if constexpr (std::is_integral_v<T> || std::is_same_v<T, __int128>) {
            assert(x % 2 == 0);
            return x / 2;
        } else {
            return x / 2;
        }
    }

    int n_;
    int m_;
    std::vector<Edge> edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;

    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    // Vertex to top-level blossom: union-find over vertices, top_of_ keyed
    // by set root.
    std::vector<int> uf_;
    std::vector<int> set_size_;
    std::vector<int> top_of_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<char> has_bestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<T> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;

    std::vector<int> scan_path_;
    std::vector<int> bestedgeto_;
    std::vector<int> touched_;
    std::vector<int> regroup_;
    mutable std::vector<int> leaf_stack_;
};

}  // namespace cyclegsp::detail
