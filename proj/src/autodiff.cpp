#include "hlrp/autodiff.hpp"

#include <cmath>

#include "hlrp/errors.hpp"

namespace hlrp {

Matrix& ParamStore::add(const std::string& name, Matrix value, bool trainable) {
    if (has(name)) throw ArgumentError("duplicate parameter name: " + name);
    index_[name] = items_.size();
    items_.push_back(Entry{name, std::move(value), trainable});
    return items_.back().value;
}

Matrix& ParamStore::at(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) throw ArgumentError("unknown parameter: " + name);
    return items_[it->second].value;
}

const Matrix& ParamStore::at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ArgumentError("unknown parameter: " + name);
    return items_[it->second].value;
}

bool ParamStore::trainable(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ArgumentError("unknown parameter: " + name);
    return items_[it->second].trainable;
}

void ParamStore::set_trainable(const std::string& name, bool flag) {
    auto it = index_.find(name);
    if (it == index_.end()) throw ArgumentError("unknown parameter: " + name);
    items_[it->second].trainable = flag;
}

long ParamStore::trainable_scalars() const {
    long n = 0;
    for (const Entry& e : items_)
        if (e.trainable) n += static_cast<long>(e.value.size());
    return n;
}

std::vector<std::string> ParamStore::trainable_names() const {
    std::vector<std::string> names;
    for (const Entry& e : items_)
        if (e.trainable) names.push_back(e.name);
    return names;
}

Matrix& GradSet::accumulate(const std::string& name, int rows, int cols) {
    auto it = index_.find(name);
    if (it == index_.end()) {
        index_[name] = items_.size();
        items_.emplace_back(name, Matrix(rows, cols));
        return items_.back().second;
    }
    return items_[it->second].second;
}

const Matrix& GradSet::at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ArgumentError("no gradient for: " + name);
    return items_[it->second].second;
}

Matrix& GradSet::at(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) throw ArgumentError("no gradient for: " + name);
    return items_[it->second].second;
}

int Tape::push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

int Tape::input(JetBatch seed) {
    Node n;
    n.op = Op::Input;
    n.out = std::move(seed);
    return push(std::move(n));
}

int Tape::affine(const std::string& w, const std::string& b, int in) {
    const Matrix& wm = params_->at(w);
    Vec bias;
    if (!b.empty()) {
        const Matrix& bm = params_->at(b);
        if (bm.cols != 1) throw ShapeError("affine: bias must be a column vector: " + b);
        bias = bm.data;
    }
    Node n;
    n.op = Op::Affine;
    n.in0 = in;
    n.w_name = w;
    n.b_name = b;
    n.out = affine_jet(wm, bias, nodes_[in].out);
    return push(std::move(n));
}

int Tape::affine_t(const std::string& w, int in) {
    Node n;
    n.op = Op::AffineT;
    n.in0 = in;
    n.w_name = w;
    n.out = affine_t_jet(params_->at(w), nodes_[in].out);
    return push(std::move(n));
}

int Tape::diag(const std::string& s, int in) {
    const Matrix& sm = params_->at(s);
    if (sm.cols != 1) throw ShapeError("diag: coefficients must be a column vector: " + s);
    Node n;
    n.op = Op::Diag;
    n.in0 = in;
    n.w_name = s;
    n.out = diag_jet(sm.data, nodes_[in].out);
    return push(std::move(n));
}

int Tape::diag_node(int s_node, int in) {
    const JetBatch& s = nodes_[s_node].out;
    if (s.batch() != 1) throw ShapeError("diag_node: coefficient node must have batch 1");
    Node n;
    n.op = Op::DiagNode;
    n.in0 = in;
    n.in1 = s_node;
    n.out = diag_jet(s.value.data, nodes_[in].out);
    return push(std::move(n));
}

int Tape::tanh(int in) {
    Node n;
    n.op = Op::Tanh;
    n.in0 = in;
    n.out = tanh_jet(nodes_[in].out);
    return push(std::move(n));
}

int Tape::relu(int in) {
    Node n;
    n.op = Op::Relu;
    n.in0 = in;
    n.out = relu_jet(nodes_[in].out);
    return push(std::move(n));
}

namespace {

void acc(Matrix& dst, const Matrix& src) {
    if (dst.empty())
        dst = src;
    else
        add_inplace(dst, src);
}

}  // namespace

void Tape::backward(const std::vector<std::pair<int, JetBatch>>& seeds, GradSet& grads) const {
    std::vector<JetBatch> adj(nodes_.size());
    std::vector<char> seeded(nodes_.size(), 0);
    auto ensure = [&](int i) {
        if (!seeded[i]) {
            adj[i] = JetBatch::zeros_like(nodes_[i].out);
            seeded[i] = 1;
        }
        return &adj[i];
    };
    for (const auto& [node, seed] : seeds) {
        if (!seed.same_shape(nodes_[node].out)) throw ShapeError("backward: seed shape mismatch");
        JetBatch* a = ensure(node);
        const JetBatch& s = seed;
        for_each_channel(*a, [&, k = 0](Matrix& m) mutable {
            const Matrix* src = nullptr;
            int idx = k++;
            // channel order matches for_each_channel
            switch (idx) {
                case 0: src = &s.value; break;
                case 1: src = &s.dx; break;
                case 2: src = &s.dxx; break;
                default:
                    src = (s.mode == JetMode::Space1DTime) ? &s.dt : (idx == 3 ? &s.dy : &s.dyy);
            }
            add_inplace(m, *src);
        });
    }

    for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
        if (!seeded[i]) continue;
        const Node& n = nodes_[i];
        const JetBatch& out_adj = adj[i];
        switch (n.op) {
            case Op::Input:
                break;
            case Op::Affine: {
                const Matrix& w = params_->at(n.w_name);
                const JetBatch& in = nodes_[n.in0].out;
                JetBatch* ia = ensure(n.in0);
                bool w_train = params_->trainable(n.w_name);
                Matrix* wg = w_train ? &grads.accumulate(n.w_name, w.rows, w.cols) : nullptr;
                const Matrix* in_ch[5];
                const Matrix* adj_ch[5];
                Matrix* ia_ch[5];
                int nch = 0;
                {
                    int k = 0;
                    for_each_channel(in, [&](const Matrix& m) { in_ch[k++] = &m; });
                    nch = k;
                    k = 0;
                    for_each_channel(out_adj, [&](const Matrix& m) { adj_ch[k++] = &m; });
                    k = 0;
                    for_each_channel(*ia, [&](Matrix& m) { ia_ch[k++] = &m; });
                }
                for (int c = 0; c < nch; ++c) {
                    gemm_tn_acc(*ia_ch[c], w, *adj_ch[c]);            // in_adj += W^T out_adj
                    if (wg) gemm_nt_acc(*wg, *adj_ch[c], *in_ch[c]);  // W_grad += out_adj in^T
                }
                if (!n.b_name.empty() && params_->trainable(n.b_name)) {
                    Matrix& bg = grads.accumulate(n.b_name, w.rows, 1);
                    const Matrix& va = out_adj.value;
                    for (int r = 0; r < va.rows; ++r) {
                        double sum = 0.0;
                        const double* row = va.data.data() + static_cast<size_t>(r) * va.cols;
                        for (int j = 0; j < va.cols; ++j) sum += row[j];
                        bg(r, 0) += sum;
                    }
                }
                break;
            }
            case Op::AffineT: {
                const Matrix& w = params_->at(n.w_name);
                const JetBatch& in = nodes_[n.in0].out;
                JetBatch* ia = ensure(n.in0);
                bool w_train = params_->trainable(n.w_name);
                Matrix* wg = w_train ? &grads.accumulate(n.w_name, w.rows, w.cols) : nullptr;
                const Matrix* in_ch[5];
                const Matrix* adj_ch[5];
                Matrix* ia_ch[5];
                int nch = 0;
                {
                    int k = 0;
                    for_each_channel(in, [&](const Matrix& m) { in_ch[k++] = &m; });
                    nch = k;
                    k = 0;
                    for_each_channel(out_adj, [&](const Matrix& m) { adj_ch[k++] = &m; });
                    k = 0;
                    for_each_channel(*ia, [&](Matrix& m) { ia_ch[k++] = &m; });
                }
                for (int c = 0; c < nch; ++c) {
                    gemm_acc(*ia_ch[c], w, *adj_ch[c]);               // in_adj += W out_adj
                    if (wg) gemm_nt_acc(*wg, *in_ch[c], *adj_ch[c]);  // W_grad += in out_adj^T
                }
                break;
            }
            case Op::Diag:
            case Op::DiagNode: {
                const JetBatch& in = nodes_[n.in0].out;
                JetBatch* ia = ensure(n.in0);
                const Vec* s_ptr;
                if (n.op == Op::Diag)
                    s_ptr = &params_->at(n.w_name).data;
                else
                    s_ptr = &nodes_[n.in1].out.value.data;
                const Vec& s = *s_ptr;

                Vec s_adj(s.size(), 0.0);
                bool need_s = (n.op == Op::DiagNode) ||
                              (n.op == Op::Diag && params_->trainable(n.w_name));
                const Matrix* in_ch[5];
                const Matrix* adj_ch[5];
                Matrix* ia_ch[5];
                int nch = 0;
                {
                    int k = 0;
                    for_each_channel(in, [&](const Matrix& m) { in_ch[k++] = &m; });
                    nch = k;
                    k = 0;
                    for_each_channel(out_adj, [&](const Matrix& m) { adj_ch[k++] = &m; });
                    k = 0;
                    for_each_channel(*ia, [&](Matrix& m) { ia_ch[k++] = &m; });
                }
                for (int c = 0; c < nch; ++c) {
                    const Matrix& oa = *adj_ch[c];
                    const Matrix& iv = *in_ch[c];
                    Matrix& iadj = *ia_ch[c];
                    for (int r = 0; r < oa.rows; ++r) {
                        const double* oar = oa.data.data() + static_cast<size_t>(r) * oa.cols;
                        const double* ivr = iv.data.data() + static_cast<size_t>(r) * iv.cols;
                        double* iar = iadj.data.data() + static_cast<size_t>(r) * iadj.cols;
                        double sr = s[r];
                        double dot = 0.0;
                        for (int j = 0; j < oa.cols; ++j) {
                            iar[j] += sr * oar[j];
                            dot += oar[j] * ivr[j];
                        }
                        if (need_s) s_adj[r] += dot;
                    }
                }
                if (n.op == Op::Diag) {
                    if (need_s) {
                        Matrix& sg = grads.accumulate(n.w_name, static_cast<int>(s.size()), 1);
                        for (size_t r = 0; r < s.size(); ++r) sg.data[r] += s_adj[r];
                    }
                } else {
                    JetBatch* sa = ensure(n.in1);
                    for (size_t r = 0; r < s.size(); ++r) sa->value.data[r] += s_adj[r];
                }
                break;
            }
            case Op::Tanh: {
                const JetBatch& in = nodes_[n.in0].out;
                const JetBatch& t = n.out;  // t = tanh(z)
                JetBatch* ia = ensure(n.in0);
                const size_t len = in.value.size();
                const double* tv = t.value.data.data();
                const double* va = out_adj.value.data.data();
                double* zadj = ia->value.data.data();
                // p = sigma', q = sigma'', dq/dz = -2 (p^2 + t q)
                for (size_t e = 0; e < len; ++e) zadj[e] += va[e] * (1.0 - tv[e] * tv[e]);
                if (in.mode != JetMode::ValueOnly) {
                    auto first_bwd = [&](const Matrix& g, const Matrix& ga, Matrix& gadj) {
                        const double* gp = g.data.data();
                        const double* gap = ga.data.data();
                        double* gj = gadj.data.data();
                        for (size_t e = 0; e < len; ++e) {
                            double p = 1.0 - tv[e] * tv[e];
                            double q = -2.0 * tv[e] * p;
                            gj[e] += gap[e] * p;
                            zadj[e] += gap[e] * q * gp[e];
                        }
                    };
                    auto second_bwd = [&](const Matrix& g, const Matrix& h, const Matrix& ha,
                                          Matrix& gadj, Matrix& hadj) {
                        const double* gp = g.data.data();
                        const double* hp = h.data.data();
                        const double* hap = ha.data.data();
                        double* gj = gadj.data.data();
                        double* hj = hadj.data.data();
                        for (size_t e = 0; e < len; ++e) {
                            double p = 1.0 - tv[e] * tv[e];
                            double q = -2.0 * tv[e] * p;
                            double dqdz = -2.0 * (p * p + tv[e] * q);
                            hj[e] += hap[e] * p;
                            gj[e] += hap[e] * 2.0 * q * gp[e];
                            zadj[e] += hap[e] * (dqdz * gp[e] * gp[e] + q * hp[e]);
                        }
                    };
                    first_bwd(in.dx, out_adj.dx, ia->dx);
                    second_bwd(in.dx, in.dxx, out_adj.dxx, ia->dx, ia->dxx);
                    if (in.mode == JetMode::Space1DTime) first_bwd(in.dt, out_adj.dt, ia->dt);
                    if (in.mode == JetMode::Space2D) {
                        first_bwd(in.dy, out_adj.dy, ia->dy);
                        second_bwd(in.dy, in.dyy, out_adj.dyy, ia->dy, ia->dyy);
                    }
                }
                break;
            }
            case Op::Relu: {
                const JetBatch& in = nodes_[n.in0].out;
                JetBatch* ia = ensure(n.in0);
                const double* z = in.value.data.data();
                const size_t len = in.value.size();
                int k = 0;
                const Matrix* adj_ch[5];
                for_each_channel(out_adj, [&](const Matrix& m) { adj_ch[k++] = &m; });
                int k2 = 0;
                for_each_channel(*ia, [&](Matrix& m) {
                    const double* ap = adj_ch[k2++]->data.data();
                    double* ip = m.data.data();
                    for (size_t e = 0; e < len; ++e)
                        if (z[e] > 0.0) ip[e] += ap[e];
                });
                break;
            }
        }
    }
}

void adam_step(ParamStore& store, const GradSet& grads, AdamState& state) {
    // gradients must cover exactly the trainable set
    for (const auto& [name, g] : grads.entries()) {
        if (!store.has(name) || !store.trainable(name))
            throw ShapeError("adam_step: gradient for non-trainable parameter " + name);
        if (!store.at(name).same_shape(g))
            throw ShapeError("adam_step: gradient shape mismatch for " + name);
    }
    for (const auto& e : store.entries())
        if (e.trainable && !grads.has(e.name))
            throw ShapeError("adam_step: missing gradient for " + e.name);

    state.step += 1;
    const double b1t = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double b2t = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    for (auto& e : store.entries()) {
        if (!e.trainable) continue;
        const Matrix& g = grads.at(e.name);
        auto& [m, v] = state.moments[e.name];
        if (m.empty()) {
            m = Matrix(g.rows, g.cols);
            v = Matrix(g.rows, g.cols);
        }
        for (size_t k = 0; k < g.data.size(); ++k) {
            double gk = g.data[k];
            m.data[k] = state.beta1 * m.data[k] + (1.0 - state.beta1) * gk;
            v.data[k] = state.beta2 * v.data[k] + (1.0 - state.beta2) * gk * gk;
            double mhat = m.data[k] / b1t;
            double vhat = v.data[k] / b2t;
            e.value.data[k] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
        }
    }
}

GradSet param_grad(const ParamStore& store, const std::string& term,
                   const std::function<LossEval(Tape&)>& forward_and_loss, double* loss_out) {
    Tape tape(store);
    LossEval loss = forward_and_loss(tape);
    if (!std::isfinite(loss.value)) throw NumericError(term, "non-finite loss");
    GradSet grads;
    tape.backward(loss.seeds, grads);
    // frozen parameters stay excluded; trainable parameters untouched by the
    // graph still get a zero gradient so optimizer steps see the full set
    for (const auto& e : store.entries())
        if (e.trainable) grads.accumulate(e.name, e.value.rows, e.value.cols);
    if (loss_out) *loss_out = loss.value;
    return grads;
}

}  // namespace hlrp
