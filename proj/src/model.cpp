#include "hlrp/model.hpp"

#include <cmath>

#include "hlrp/errors.hpp"

namespace hlrp {

std::string trunk_in_w() { return "trunk.in.W"; }
std::string trunk_in_b() { return "trunk.in.b"; }
std::string trunk_out_w() { return "trunk.out.W"; }
std::string trunk_out_b() { return "trunk.out.b"; }
std::string trunk_u(int l) { return "trunk.h" + std::to_string(l) + ".U"; }
std::string trunk_v(int l) { return "trunk.h" + std::to_string(l) + ".V"; }
std::string trunk_b(int l) { return "trunk.h" + std::to_string(l) + ".b"; }
std::string trunk_s(int l) { return "trunk.h" + std::to_string(l) + ".s"; }
std::string hyper_emb_w(int m) { return "hyper.emb" + std::to_string(m) + ".W"; }
std::string hyper_emb_b(int m) { return "hyper.emb" + std::to_string(m) + ".b"; }
std::string hyper_head_w(int l) { return "hyper.head" + std::to_string(l) + ".W"; }
std::string hyper_head_b(int l) { return "hyper.head" + std::to_string(l) + ".b"; }
std::string dense_w(int l) { return "net.l" + std::to_string(l) + ".W"; }
std::string dense_b(int l) { return "net.l" + std::to_string(l) + ".b"; }

namespace {

Matrix glorot_uniform(int rows, int cols, Rng& rng) {
    double bound = std::sqrt(6.0 / (rows + cols));
    return rng.uniform_matrix(rows, cols, -bound, bound);
}

void add_dense(ParamStore& p, const std::string& w, const std::string& b, int out_dim, int in_dim,
               Rng& rng, double bias_init = 0.0) {
    p.add(w, glorot_uniform(out_dim, in_dim, rng));
    Matrix bias(out_dim, 1);
    for (double& v : bias.data) v = bias_init;
    p.add(b, std::move(bias));
}

}  // namespace

Model init_model(ModelKind kind, const ArchConfig& arch, Rng& rng) {
    Model m;
    m.kind = kind;
    m.arch = arch;
    ParamStore& p = m.params;

    if (kind == ModelKind::VanillaPinn || kind == ModelKind::PinnP) {
        int in = arch.in_dim;
        add_dense(p, dense_w(0), dense_b(0), arch.width, in, rng);
        for (int l = 1; l <= arch.dense_hidden; ++l)
            add_dense(p, dense_w(l), dense_b(l), arch.width, arch.width, rng);
        add_dense(p, dense_w(arch.dense_hidden + 1), dense_b(arch.dense_hidden + 1), 1, arch.width,
                  rng);
        return m;
    }

    add_dense(p, trunk_in_w(), trunk_in_b(), arch.width, arch.in_dim, rng);
    for (int l = 0; l < arch.hidden_layers; ++l) {
        bool basis_trainable = kind != ModelKind::NaiveLowRank;
        p.add(trunk_u(l), orthonormalize_columns(rng.gaussian_matrix(arch.width, arch.rank)),
              basis_trainable);
        p.add(trunk_v(l), orthonormalize_columns(rng.gaussian_matrix(arch.width, arch.rank)),
              basis_trainable);
        Matrix b(arch.width, 1);
        p.add(trunk_b(l), std::move(b));
        if (kind == ModelKind::NaiveLowRank) {
            Matrix s(arch.rank, 1);
            for (double& v : s.data) v = 1.0;
            p.add(trunk_s(l), std::move(s));
        }
    }
    add_dense(p, trunk_out_w(), trunk_out_b(), 1, arch.width, rng);

    if (kind == ModelKind::HyperPhase1) {
        int in = arch.mu_dim;
        for (int mm = 0; mm < arch.emb_layers; ++mm) {
            add_dense(p, hyper_emb_w(mm), hyper_emb_b(mm), arch.emb_width, in, rng);
            in = arch.emb_width;
        }
        for (int l = 0; l < arch.hidden_layers; ++l)
            add_dense(p, hyper_head_w(l), hyper_head_b(l), arch.rank, arch.emb_width, rng,
                      arch.head_bias);
    }
    return m;
}

std::vector<Vec> hyper_forward(const Model& model, const Vec& mu) {
    if (static_cast<int>(mu.size()) != model.arch.mu_dim)
        throw ShapeError("hyper_forward: mu dimension mismatch");
    if (!model.params.has(hyper_emb_w(0)))
        throw ArgumentError("hyper_forward: model has no hypernetwork");
    Vec e = mu;
    for (int m = 0; m < model.arch.emb_layers; ++m) {
        Vec z = matvec(model.params.at(hyper_emb_w(m)), e);
        const Matrix& b = model.params.at(hyper_emb_b(m));
        for (size_t i = 0; i < z.size(); ++i) z[i] = std::tanh(z[i] + b.data[i]);
        e = std::move(z);
    }
    std::vector<Vec> s(model.arch.hidden_layers);
    for (int l = 0; l < model.arch.hidden_layers; ++l) {
        Vec z = matvec(model.params.at(hyper_head_w(l)), e);
        const Matrix& b = model.params.at(hyper_head_b(l));
        for (size_t i = 0; i < z.size(); ++i) {
            double v = z[i] + b.data[i];
            z[i] = v > 0.0 ? v : 0.0;
        }
        s[l] = std::move(z);
    }
    return s;
}

Matrix effective_weight(const LowRankLayer& layer, const Vec& s) {
    if (static_cast<int>(s.size()) != layer.rank())
        throw ShapeError("effective_weight: length(s) != rank");
    Matrix us = layer.u;
    for (int i = 0; i < us.rows; ++i)
        for (int j = 0; j < us.cols; ++j) us(i, j) *= s[j];
    return matmul_nt(us, layer.v);
}

JetBatch model_forward(const Model& model, const JetBatch& seed, const Vec& mu) {
    if (seed.width() != model.arch.in_dim)
        throw ShapeError("model_forward: seed width != input dimension");
    const ParamStore& p = model.params;
    auto bias = [&](const std::string& name) { return p.at(name).data; };

    if (model.kind == ModelKind::VanillaPinn || model.kind == ModelKind::PinnP) {
        JetBatch h = seed;
        for (int l = 0; l <= model.arch.dense_hidden; ++l)
            h = tanh_jet(affine_jet(p.at(dense_w(l)), bias(dense_b(l)), h));
        return affine_jet(p.at(dense_w(model.arch.dense_hidden + 1)),
                          bias(dense_b(model.arch.dense_hidden + 1)), h);
    }

    std::vector<Vec> s;
    if (model.kind == ModelKind::HyperPhase1) s = hyper_forward(model, mu);
    JetBatch h = tanh_jet(affine_jet(p.at(trunk_in_w()), bias(trunk_in_b()), seed));
    for (int l = 0; l < model.arch.hidden_layers; ++l) {
        const Vec& sl = (model.kind == ModelKind::HyperPhase1) ? s[l] : p.at(trunk_s(l)).data;
        JetBatch z = affine_t_jet(p.at(trunk_v(l)), h);
        z = diag_jet(sl, z);
        z = affine_jet(p.at(trunk_u(l)), bias(trunk_b(l)), z);
        h = tanh_jet(z);
    }
    return affine_jet(p.at(trunk_out_w()), bias(trunk_out_b()), h);
}

int model_forward_graph(Tape& tape, const Model& model, int input, const Vec& mu) {
    if (model.kind == ModelKind::VanillaPinn || model.kind == ModelKind::PinnP) {
        int h = input;
        for (int l = 0; l <= model.arch.dense_hidden; ++l)
            h = tape.tanh(tape.affine(dense_w(l), dense_b(l), h));
        return tape.affine(dense_w(model.arch.dense_hidden + 1),
                           dense_b(model.arch.dense_hidden + 1), h);
    }

    std::vector<int> s_nodes;
    if (model.kind == ModelKind::HyperPhase1) {
        std::vector<Vec> rows;
        for (double v : mu) rows.push_back(Vec{v});
        int e = tape.input(seed_value_only(rows));
        for (int m = 0; m < model.arch.emb_layers; ++m)
            e = tape.tanh(tape.affine(hyper_emb_w(m), hyper_emb_b(m), e));
        for (int l = 0; l < model.arch.hidden_layers; ++l)
            s_nodes.push_back(tape.relu(tape.affine(hyper_head_w(l), hyper_head_b(l), e)));
    }

    int h = tape.tanh(tape.affine(trunk_in_w(), trunk_in_b(), input));
    for (int l = 0; l < model.arch.hidden_layers; ++l) {
        int z = tape.affine_t(trunk_v(l), h);
        z = (model.kind == ModelKind::HyperPhase1) ? tape.diag_node(s_nodes[l], z)
                                                   : tape.diag(trunk_s(l), z);
        z = tape.affine(trunk_u(l), trunk_b(l), z);
        h = tape.tanh(z);
    }
    return tape.affine(trunk_out_w(), trunk_out_b(), h);
}

double ortho_penalty(const Matrix& u, const Matrix& v, double w1, double w2) {
    return w1 * gram_defect(u) + w2 * gram_defect(v);
}

namespace {

// d/dU ||U^T U - I||_F^2 = 4 U (U^T U - I)
void gram_defect_grad(const Matrix& u, double w, Matrix& grad) {
    Matrix g = matmul_tn(u, u);
    for (int i = 0; i < g.rows; ++i) g(i, i) -= 1.0;
    gemm_acc(grad, u, g, 4.0 * w);
}

}  // namespace

double ortho_penalty_total(const Model& model, double w1, double w2) {
    if (!model.is_low_rank()) return 0.0;
    double total = 0.0;
    for (int l = 0; l < model.arch.hidden_layers; ++l)
        total += ortho_penalty(model.params.at(trunk_u(l)), model.params.at(trunk_v(l)), w1, w2);
    return total;
}

double ortho_penalty_grad(const Model& model, double w1, double w2, GradSet& grads) {
    if (!model.is_low_rank()) return 0.0;
    double total = 0.0;
    for (int l = 0; l < model.arch.hidden_layers; ++l) {
        const Matrix& u = model.params.at(trunk_u(l));
        const Matrix& v = model.params.at(trunk_v(l));
        total += ortho_penalty(u, v, w1, w2);
        if (model.params.trainable(trunk_u(l)))
            gram_defect_grad(u, w1, grads.accumulate(trunk_u(l), u.rows, u.cols));
        if (model.params.trainable(trunk_v(l)))
            gram_defect_grad(v, w2, grads.accumulate(trunk_v(l), v.rows, v.cols));
    }
    return total;
}

std::vector<int> nnz_ranks(const std::vector<Vec>& s_set, double eps) {
    if (eps < 0.0) throw ArgumentError("nnz_ranks: eps must be >= 0");
    std::vector<int> counts;
    for (const Vec& s : s_set) {
        int c = 0;
        for (double v : s)
            if (v > eps) ++c;
        counts.push_back(c);
    }
    return counts;
}

long count_params(const Model& model) {
    long n = model.params.trainable_scalars();
    if (model.kind == ModelKind::HyperPhase2 && !model.s_mask.empty()) {
        for (int l = 0; l < model.arch.hidden_layers; ++l)
            for (uint8_t live : model.s_mask[l])
                if (!live) --n;
    }
    return n;
}

long low_rank_storage_count(const Model& model) {
    if (!model.is_low_rank()) throw ArgumentError("low_rank_storage_count: dense model");
    long n = 0;
    for (int l = 0; l < model.arch.hidden_layers; ++l) {
        n += static_cast<long>(model.params.at(trunk_u(l)).size());
        n += static_cast<long>(model.params.at(trunk_v(l)).size());
        n += model.arch.rank;  // the coefficient slot, whether stored or hypernet-supplied
    }
    n += static_cast<long>(model.params.at(trunk_in_w()).size());
    n += static_cast<long>(model.params.at(trunk_in_b()).size());
    n += static_cast<long>(model.params.at(trunk_out_w()).size());
    n += static_cast<long>(model.params.at(trunk_out_b()).size());
    return n;
}

LowRankLayer svd_truncate(const DenseLayer& layer, int r) {
    const Matrix& w = layer.w;
    if (r < 1 || r > std::min(w.rows, w.cols))
        throw ArgumentError("svd_truncate: rank out of range");
    SvdResult dec = svd(w);
    LowRankLayer out;
    out.u = Matrix(w.rows, r);
    out.v = Matrix(w.cols, r);
    out.s.assign(dec.s.begin(), dec.s.begin() + r);
    out.b = layer.b;
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < r; ++j) out.u(i, j) = dec.u(i, j);
    for (int i = 0; i < w.cols; ++i)
        for (int j = 0; j < r; ++j) out.v(i, j) = dec.v(i, j);
    return out;
}

}  // namespace hlrp
