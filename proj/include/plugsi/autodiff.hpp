#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plugsi/tensor.hpp"

namespace plugsi {

/// Cost attribution buckets for the streaming adaptation loop. Nodes record
/// the phase active when they were created; backward charges each node's pull
/// to the same bucket.
enum class Phase : std::uint8_t { Other = 0, Context = 1, Adapter = 2, Backbone = 3 };
inline constexpr std::size_t kPhaseCount = 4;

struct PhaseSeconds {
    std::array<double, kPhaseCount> s{};
    double& operator[](Phase p) { return s[static_cast<std::size_t>(p)]; }
    double operator[](Phase p) const { return s[static_cast<std::size_t>(p)]; }
    PhaseSeconds& operator+=(const PhaseSeconds& o) {
        for (std::size_t i = 0; i < kPhaseCount; ++i) s[i] += o.s[i];
        return *this;
    }
};

/// Handle into a Tape. Only valid for the tape that produced it.
struct Var {
    std::int32_t id = -1;
    bool valid() const { return id >= 0; }
};

/// Recorded computation over Tensors with reverse-mode gradients. One tape per
/// forward pass; rebuilt per batch/step. Not shareable across threads.
class Tape {
public:
    using Clock = std::chrono::steady_clock;

    Var constant(Tensor value) { return push(std::move(value), false); }

    Var leaf(Tensor value) { return push(std::move(value), true); }

    const Tensor& val(Var x) const { return node(x).value; }
    const Shape& shape(Var x) const { return node(x).value.shape; }

    /// Gradient of the last backward() target w.r.t. x. Zero tensor if x was
    /// not reached. Only meaningful after backward().
    const Tensor& grad(Var x) const {
        const Node& n = node(x);
        if (!n.needs_grad) throw std::logic_error("grad: variable does not carry gradients");
        return n.grad;
    }

    void set_phase(Phase p) { phase_ = p; }
    Phase phase() const { return phase_; }
    const PhaseSeconds& forward_seconds() const { return fwd_; }
    const PhaseSeconds& backward_seconds() const { return bwd_; }

    std::size_t size() const { return nodes_.size(); }

    // ---- ops -----------------------------------------------------------

    Var add(Var a, Var b) {
        Timer t(this);
        require_same_shape(val(a), val(b), "add");
        Tensor out = val(a);
        const Tensor& bv = val(b);
        for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] += bv.v[i];
        return binary(std::move(out), a, b, [](Tape& tp, const Tensor& g, Var x, Var y) {
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < g.numel(); ++i) gx.v[i] += g.v[i];
            });
            tp.accum(y, [&](Tensor& gy) {
                for (std::size_t i = 0; i < g.numel(); ++i) gy.v[i] += g.v[i];
            });
        });
    }

    Var sub(Var a, Var b) {
        Timer t(this);
        require_same_shape(val(a), val(b), "sub");
        Tensor out = val(a);
        const Tensor& bv = val(b);
        for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] -= bv.v[i];
        return binary(std::move(out), a, b, [](Tape& tp, const Tensor& g, Var x, Var y) {
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < g.numel(); ++i) gx.v[i] += g.v[i];
            });
            tp.accum(y, [&](Tensor& gy) {
                for (std::size_t i = 0; i < g.numel(); ++i) gy.v[i] -= g.v[i];
            });
        });
    }

    /// Elementwise (Hadamard) product.
    Var mul(Var a, Var b) {
        Timer t(this);
        require_same_shape(val(a), val(b), "mul");
        Tensor out = val(a);
        const Tensor& bv = val(b);
        for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] *= bv.v[i];
        return binary(std::move(out), a, b, [](Tape& tp, const Tensor& g, Var x, Var y) {
            const Tensor& xv = tp.val(x);
            const Tensor& yv = tp.val(y);
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < g.numel(); ++i) gx.v[i] += g.v[i] * yv.v[i];
            });
            tp.accum(y, [&](Tensor& gy) {
                for (std::size_t i = 0; i < g.numel(); ++i) gy.v[i] += g.v[i] * xv.v[i];
            });
        });
    }

    Var scale(Var a, double c) {
        Timer t(this);
        Tensor out = val(a);
        for (double& x : out.v) x *= c;
        return unary(std::move(out), a, [c](Tape& tp, const Tensor& g, Var x) {
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < g.numel(); ++i) gx.v[i] += c * g.v[i];
            });
        });
    }

    /// [m,k] x [k,n] -> [m,n].
    Var matmul(Var a, Var b) {
        Timer t(this);
        const Tensor& av = val(a);
        const Tensor& bv = val(b);
        if (av.rank() != 2 || bv.rank() != 2 || av.cols() != bv.rows())
            throw std::invalid_argument("matmul: incompatible shapes " + shape_str(av.shape) +
                                        " x " + shape_str(bv.shape));
        const std::size_t m = av.rows(), k = av.cols(), n = bv.cols();
        Tensor out = Tensor::zeros({m, n});
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t p = 0; p < k; ++p) {
                const double aip = av.at(i, p);
                if (aip == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) out.at(i, j) += aip * bv.at(p, j);
            }
        return binary(std::move(out), a, b, [m, k, n](Tape& tp, const Tensor& g, Var x, Var y) {
            const Tensor& xv = tp.val(x);
            const Tensor& yv = tp.val(y);
            tp.accum(x, [&](Tensor& gx) {  // g . y^T
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        const double gij = g.at(i, j);
                        if (gij == 0.0) continue;
                        for (std::size_t p = 0; p < k; ++p) gx.at(i, p) += gij * yv.at(p, j);
                    }
            });
            tp.accum(y, [&](Tensor& gy) {  // x^T . g
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t p = 0; p < k; ++p) {
                        const double xip = xv.at(i, p);
                        if (xip == 0.0) continue;
                        for (std::size_t j = 0; j < n; ++j) gy.at(p, j) += xip * g.at(i, j);
                    }
            });
        });
    }

    /// Elementwise max(0, x); subgradient 0 at x == 0.
    Var relu(Var a) {
        Timer t(this);
        Tensor out = val(a);
        for (double& x : out.v) x = x > 0.0 ? x : 0.0;
        return unary(std::move(out), a, [](Tape& tp, const Tensor& g, Var x) {
            const Tensor& xv = tp.val(x);
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < g.numel(); ++i)
                    if (xv.v[i] > 0.0) gx.v[i] += g.v[i];
            });
        });
    }

    /// Numerically stable logistic; output strictly inside (0, 1).
    Var sigmoid(Var a) {
        Timer t(this);
        Tensor out = val(a);
        for (double& x : out.v) {
            if (x >= 0.0) {
                x = 1.0 / (1.0 + std::exp(-x));
            } else {
                const double e = std::exp(x);
                x = e / (1.0 + e);
            }
        }
        Var r = unary(std::move(out), a, [](Tape& tp, const Tensor& g, Var x) {
            // reads the op output through the saved result id
            const Tensor& sv = tp.nodes_[tp.nodes_[x.id].user_aux].value;
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < g.numel(); ++i)
                    gx.v[i] += g.v[i] * sv.v[i] * (1.0 - sv.v[i]);
            });
        });
        nodes_[a.id].user_aux = r.id;
        return r;
    }

    /// Sum of all elements -> scalar.
    Var sum(Var a) {
        Timer t(this);
        double s = 0.0;
        for (double x : val(a).v) s += x;
        return unary(Tensor::scalar(s), a, [](Tape& tp, const Tensor& g, Var x) {
            const double g0 = g.v[0];
            tp.accum(x, [&](Tensor& gx) {
                for (double& e : gx.v) e += g0;
            });
        });
    }

    /// Mean over all elements of |a - b| -> scalar. sign(0) taken as 0.
    Var mean_abs_diff(Var a, Var b) {
        Timer t(this);
        require_same_shape(val(a), val(b), "mean_abs_diff");
        const Tensor& av = val(a);
        const Tensor& bv = val(b);
        const std::size_t n = av.numel();
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(av.v[i] - bv.v[i]);
        Tensor out = Tensor::scalar(s / static_cast<double>(n));
        return binary(std::move(out), a, b, [n](Tape& tp, const Tensor& g, Var x, Var y) {
            const Tensor& xv = tp.val(x);
            const Tensor& yv = tp.val(y);
            const double g0 = g.v[0] / static_cast<double>(n);
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = xv.v[i] - yv.v[i];
                    gx.v[i] += g0 * (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0));
                }
            });
            tp.accum(y, [&](Tensor& gy) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = xv.v[i] - yv.v[i];
                    gy.v[i] -= g0 * (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0));
                }
            });
        });
    }

    /// Weighted mean of |a - b| with constant 0/1 weights: sum(w.|a-b|) / sum(w).
    /// Entries with w == 0 contribute nothing to value or gradient.
    Var masked_abs_mean(Var a, Var b, const Tensor& w) {
        Timer t(this);
        require_same_shape(val(a), val(b), "masked_abs_mean");
        require_same_shape(val(a), w, "masked_abs_mean weights");
        const Tensor& av = val(a);
        const Tensor& bv = val(b);
        double s = 0.0, wsum = 0.0;
        for (std::size_t i = 0; i < w.numel(); ++i) {
            s += w.v[i] * std::abs(av.v[i] - bv.v[i]);
            wsum += w.v[i];
        }
        const double denom = wsum > 0.0 ? wsum : 1.0;
        Tensor out = Tensor::scalar(s / denom);
        auto wv = std::make_shared<Tensor>(w);
        return binary(std::move(out), a, b,
                      [wv, denom](Tape& tp, const Tensor& g, Var x, Var y) {
                          const Tensor& xv = tp.val(x);
                          const Tensor& yv = tp.val(y);
                          const double g0 = g.v[0] / denom;
                          tp.accum(x, [&](Tensor& gx) {
                              for (std::size_t i = 0; i < gx.numel(); ++i) {
                                  const double d = xv.v[i] - yv.v[i];
                                  gx.v[i] += g0 * wv->v[i] * (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0));
                              }
                          });
                          tp.accum(y, [&](Tensor& gy) {
                              for (std::size_t i = 0; i < gy.numel(); ++i) {
                                  const double d = xv.v[i] - yv.v[i];
                                  gy.v[i] -= g0 * wv->v[i] * (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0));
                              }
                          });
                      });
    }

    /// Broadcast-add a [1,c] row vector to every row of a [r,c] matrix.
    Var add_row(Var a, Var row) {
        Timer t(this);
        const Tensor& av = val(a);
        const Tensor& rv = val(row);
        if (av.rank() != 2 || rv.rank() != 2 || rv.rows() != 1 || rv.cols() != av.cols())
            throw std::invalid_argument("add_row: need [r,c] + [1,c]");
        Tensor out = av;
        for (std::size_t i = 0; i < av.rows(); ++i)
            for (std::size_t j = 0; j < av.cols(); ++j) out.at(i, j) += rv.at(0, j);
        return binary(std::move(out), a, row, [](Tape& tp, const Tensor& g, Var x, Var y) {
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < g.numel(); ++i) gx.v[i] += g.v[i];
            });
            tp.accum(y, [&](Tensor& gy) {
                for (std::size_t i = 0; i < g.rows(); ++i)
                    for (std::size_t j = 0; j < g.cols(); ++j) gy.at(0, j) += g.at(i, j);
            });
        });
    }

    /// Row sums of a [r,c] matrix -> [r,1].
    Var row_sum(Var a) {
        Timer t(this);
        const Tensor& av = val(a);
        if (av.rank() != 2) throw std::invalid_argument("row_sum: rank-2 required");
        Tensor out = Tensor::zeros({av.rows(), 1});
        for (std::size_t i = 0; i < av.rows(); ++i)
            for (std::size_t j = 0; j < av.cols(); ++j) out.at(i, 0) += av.at(i, j);
        return unary(std::move(out), a, [](Tape& tp, const Tensor& g, Var x) {
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < gx.rows(); ++i)
                    for (std::size_t j = 0; j < gx.cols(); ++j) gx.at(i, j) += g.at(i, 0);
            });
        });
    }

    /// Elementwise x^p. Caller guarantees the domain (used with p=-1/2 on
    /// degrees, which are >= 1).
    Var pow_elem(Var a, double p) {
        Timer t(this);
        Tensor out = val(a);
        for (double& x : out.v) x = std::pow(x, p);
        return unary(std::move(out), a, [p](Tape& tp, const Tensor& g, Var x) {
            const Tensor& xv = tp.val(x);
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < g.numel(); ++i)
                    gx.v[i] += g.v[i] * p * std::pow(xv.v[i], p - 1.0);
            });
        });
    }

    /// Outer product of two column vectors: [r,1] x [s,1] -> [r,s].
    Var outer(Var a, Var b) {
        Timer t(this);
        const Tensor& av = val(a);
        const Tensor& bv = val(b);
        if (av.rank() != 2 || bv.rank() != 2 || av.cols() != 1 || bv.cols() != 1)
            throw std::invalid_argument("outer: two column vectors required");
        const std::size_t r = av.rows(), s = bv.rows();
        Tensor out = Tensor::zeros({r, s});
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s; ++j) out.at(i, j) = av.at(i, 0) * bv.at(j, 0);
        return binary(std::move(out), a, b, [r, s](Tape& tp, const Tensor& g, Var x, Var y) {
            const Tensor& xv = tp.val(x);
            const Tensor& yv = tp.val(y);
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < s; ++j) gx.at(i, 0) += g.at(i, j) * yv.at(j, 0);
            });
            tp.accum(y, [&](Tensor& gy) {
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < s; ++j) gy.at(j, 0) += g.at(i, j) * xv.at(i, 0);
            });
        });
    }

    /// Select rows of a [r,c] matrix -> [k,c]. Indices may repeat.
    Var gather_rows(Var a, std::vector<std::size_t> idx) {
        Timer t(this);
        const Tensor& av = val(a);
        if (av.rank() != 2) throw std::invalid_argument("gather_rows: rank-2 required");
        const std::size_t c = av.cols();
        Tensor out = Tensor::zeros({idx.size(), c});
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= av.rows()) throw std::invalid_argument("gather_rows: index out of range");
            for (std::size_t j = 0; j < c; ++j) out.at(i, j) = av.at(idx[i], j);
        }
        auto ix = std::make_shared<std::vector<std::size_t>>(std::move(idx));
        return unary(std::move(out), a, [ix, c](Tape& tp, const Tensor& g, Var x) {
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < ix->size(); ++i)
                    for (std::size_t j = 0; j < c; ++j) gx.at((*ix)[i], j) += g.at(i, j);
            });
        });
    }

    /// [r,c1] | [r,c2] -> [r,c1+c2].
    Var hconcat(Var a, Var b) {
        Timer t(this);
        const Tensor& av = val(a);
        const Tensor& bv = val(b);
        if (av.rank() != 2 || bv.rank() != 2 || av.rows() != bv.rows())
            throw std::invalid_argument("hconcat: row count mismatch");
        const std::size_t r = av.rows(), c1 = av.cols(), c2 = bv.cols();
        Tensor out = Tensor::zeros({r, c1 + c2});
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c1; ++j) out.at(i, j) = av.at(i, j);
            for (std::size_t j = 0; j < c2; ++j) out.at(i, c1 + j) = bv.at(i, j);
        }
        return binary(std::move(out), a, b, [r, c1, c2](Tape& tp, const Tensor& g, Var x, Var y) {
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < c1; ++j) gx.at(i, j) += g.at(i, j);
            });
            tp.accum(y, [&](Tensor& gy) {
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < c2; ++j) gy.at(i, j) += g.at(i, c1 + j);
            });
        });
    }

    /// Stack equally-shaped [r,c] matrices vertically -> [k*r, c].
    Var vconcat(const std::vector<Var>& parts) {
        Timer t(this);
        if (parts.empty()) throw std::invalid_argument("vconcat: empty");
        const Tensor& first = val(parts[0]);
        const std::size_t r = first.rows(), c = first.cols();
        Tensor out = Tensor::zeros({parts.size() * r, c});
        for (std::size_t p = 0; p < parts.size(); ++p) {
            require_same_shape(first, val(parts[p]), "vconcat");
            std::memcpy(out.v.data() + p * r * c, val(parts[p]).v.data(), r * c * sizeof(double));
        }
        auto srcs = std::make_shared<std::vector<Var>>(parts);
        bool ng = false;
        for (Var p : parts) ng = ng || node(p).needs_grad;
        Var res = push(std::move(out), ng);
        if (ng)
            nodes_[res.id].pull = [srcs, r, c](Tape& tp, const Tensor& g) {
                for (std::size_t p = 0; p < srcs->size(); ++p)
                    tp.accum((*srcs)[p], [&](Tensor& gx) {
                        for (std::size_t i = 0; i < r * c; ++i) gx.v[i] += g.v[p * r * c + i];
                    });
            };
        return res;
    }

    /// Elementwise mean of equally-shaped tensors.
    Var mean_vars(const std::vector<Var>& parts) {
        Timer t(this);
        if (parts.empty()) throw std::invalid_argument("mean_vars: empty");
        Tensor out = val(parts[0]);
        for (std::size_t p = 1; p < parts.size(); ++p) {
            require_same_shape(out, val(parts[p]), "mean_vars");
            const Tensor& pv = val(parts[p]);
            for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] += pv.v[i];
        }
        const double inv = 1.0 / static_cast<double>(parts.size());
        for (double& x : out.v) x *= inv;
        auto srcs = std::make_shared<std::vector<Var>>(parts);
        bool ng = false;
        for (Var p : parts) ng = ng || node(p).needs_grad;
        Var res = push(std::move(out), ng);
        if (ng)
            nodes_[res.id].pull = [srcs, inv](Tape& tp, const Tensor& g) {
                for (Var p : *srcs)
                    tp.accum(p, [&](Tensor& gx) {
                        for (std::size_t i = 0; i < g.numel(); ++i) gx.v[i] += inv * g.v[i];
                    });
            };
        return res;
    }

    /// Copy of `base` with base[e.first][e.second] replaced by vals[e] for each
    /// listed position. Positions must be distinct. Gradients flow to vals only.
    Var scatter_update(const Tensor& base, const std::vector<std::pair<std::size_t, std::size_t>>& pos,
                       Var vals) {
        Timer t(this);
        const Tensor& vv = val(vals);
        if (base.rank() != 2) throw std::invalid_argument("scatter_update: rank-2 base required");
        if (vv.numel() != pos.size())
            throw std::invalid_argument("scatter_update: positions/values count mismatch");
        Tensor out = base;
        for (std::size_t e = 0; e < pos.size(); ++e) out.at(pos[e].first, pos[e].second) = vv.v[e];
        auto ps = std::make_shared<std::vector<std::pair<std::size_t, std::size_t>>>(pos);
        return unary(std::move(out), vals, [ps](Tape& tp, const Tensor& g, Var x) {
            tp.accum(x, [&](Tensor& gx) {
                for (std::size_t e = 0; e < ps->size(); ++e)
                    gx.v[e] += g.at((*ps)[e].first, (*ps)[e].second);
            });
        });
    }

    // ---- reverse pass --------------------------------------------------

    /// Reverse-mode sweep from a scalar loss. After the call, grad(x) is valid
    /// for every grad-carrying node; unreached nodes hold exact zeros.
    void backward(Var loss) {
        const Node& ln = node(loss);
        if (ln.value.numel() != 1)
            throw std::invalid_argument("backward: loss must be scalar, got " +
                                        shape_str(ln.value.shape));
        for (auto& n : nodes_)
            if (n.needs_grad) n.grad = Tensor::zeros(n.value.shape);
        if (!ln.needs_grad) return;  // loss independent of all parameters
        nodes_[loss.id].grad.v[0] = 1.0;
        for (std::int32_t i = loss.id; i >= 0; --i) {
            Node& n = nodes_[i];
            if (!n.needs_grad || !n.pull) continue;
            const auto t0 = Clock::now();
            n.pull(*this, n.grad);
            bwd_[n.phase] += std::chrono::duration<double>(Clock::now() - t0).count();
        }
    }

private:
    struct Node {
        Tensor value;
        Tensor grad;
        std::function<void(Tape&, const Tensor&)> pull;
        Phase phase = Phase::Other;
        bool needs_grad = false;
        std::int32_t user_aux = -1;  // op-specific link (e.g. sigmoid output id)
    };

    // Times one op creation (forward compute included) into the current phase.
    struct Timer {
        Tape* t;
        Clock::time_point t0;
        explicit Timer(Tape* tp) : t(tp), t0(Clock::now()) {}
        ~Timer() { t->fwd_[t->phase_] += std::chrono::duration<double>(Clock::now() - t0).count(); }
    };

    const Node& node(Var x) const {
        if (!x.valid() || static_cast<std::size_t>(x.id) >= nodes_.size())
            throw std::logic_error("Tape: invalid variable handle");
        return nodes_[x.id];
    }

    Var push(Tensor value, bool needs_grad) {
        Node n;
        n.value = std::move(value);
        n.needs_grad = needs_grad;
        n.phase = phase_;
        nodes_.push_back(std::move(n));
        return Var{static_cast<std::int32_t>(nodes_.size() - 1)};
    }

    template <typename F>
    Var unary(Tensor out, Var a, F&& back) {
        const bool ng = node(a).needs_grad;
        Var r = push(std::move(out), ng);
        if (ng)
            nodes_[r.id].pull = [a, back = std::forward<F>(back)](Tape& tp, const Tensor& g) {
                back(tp, g, a);
            };
        return r;
    }

    template <typename F>
    Var binary(Tensor out, Var a, Var b, F&& back) {
        const bool ng = node(a).needs_grad || node(b).needs_grad;
        Var r = push(std::move(out), ng);
        if (ng)
            nodes_[r.id].pull = [a, b, back = std::forward<F>(back)](Tape& tp, const Tensor& g) {
                back(tp, g, a, b);
            };
        return r;
    }

    template <typename F>
    void accum(Var x, F&& write) {
        Node& n = nodes_[x.id];
        if (!n.needs_grad) return;
        write(n.grad);
    }

    std::vector<Node> nodes_;
    Phase phase_ = Phase::Other;
    PhaseSeconds fwd_{}, bwd_{};
};

/// Scoped phase switch for cost attribution.
class PhaseScope {
public:
    PhaseScope(Tape& t, Phase p) : tape_(t), prev_(t.phase()) { tape_.set_phase(p); }
    ~PhaseScope() { tape_.set_phase(prev_); }

private:
    Tape& tape_;
    Phase prev_;
};

}  // namespace plugsi
