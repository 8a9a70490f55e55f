#include "ssaug/cnn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>

namespace ssaug {

using json = nlohmann::json;

void Layer::zero_grads() {
    for (Eigen::MatrixXd* g : grads()) g->setZero();
}

// ---------------------------------------------------------------- Conv1D

Conv1D::Conv1D(int in_ch, int out_ch, int kernel)
    : in_ch(in_ch), out_ch(out_ch), kernel(kernel),
      w(Eigen::MatrixXd::Zero(out_ch, in_ch * kernel)),
      gw(Eigen::MatrixXd::Zero(out_ch, in_ch * kernel)) {}

// internals work on transposed (length x channels) copies so every segment is
// a contiguous, vectorizable column slice of the column-major storage
Eigen::MatrixXd Conv1D::forward(const Eigen::MatrixXd& in, bool, Rng*) {
    if (in.rows() != in_ch || in.cols() < kernel) throw ShapeMismatch("conv1d: bad input shape");
    cache_in_ = in.transpose();
    const Eigen::Index p = in.cols() - kernel + 1;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p, out_ch);
    for (int f = 0; f < out_ch; ++f)
        for (int c = 0; c < in_ch; ++c)
            for (int j = 0; j < kernel; ++j)
                out.col(f) += w(f, c * kernel + j) * cache_in_.col(c).segment(j, p);
    return out.transpose();
}

Eigen::MatrixXd Conv1D::backward(const Eigen::MatrixXd& grad_out) {
    const Eigen::Index p = grad_out.cols();
    const Eigen::MatrixXd go = grad_out.transpose();
    Eigen::MatrixXd gin = Eigen::MatrixXd::Zero(cache_in_.rows(), in_ch);
    for (int f = 0; f < out_ch; ++f) {
        for (int c = 0; c < in_ch; ++c) {
            for (int j = 0; j < kernel; ++j) {
                gw(f, c * kernel + j) += go.col(f).dot(cache_in_.col(c).segment(j, p));
                gin.col(c).segment(j, p) += w(f, c * kernel + j) * go.col(f);
            }
        }
    }
    return gin.transpose();
}

// ------------------------------------------------------------------ Relu

Eigen::MatrixXd Relu::forward(const Eigen::MatrixXd& in, bool, Rng*) {
    cache_in_ = in;
    return in.cwiseMax(0.0);
}

Eigen::MatrixXd Relu::backward(const Eigen::MatrixXd& grad_out) {
    return (cache_in_.array() > 0.0).cast<double>() * grad_out.array();
}

// ---------------------------------------------------------------- Pool1D

Eigen::MatrixXd Pool1D::forward(const Eigen::MatrixXd& in, bool, Rng*) {
    in_len_ = in.cols();
    const Eigen::Index out_len = in.cols() / width;
    Eigen::MatrixXd out(in.rows(), out_len);
    if (mode == PoolMode::Max) argmax_.resize(in.rows(), out_len);
    for (Eigen::Index c = 0; c < in.rows(); ++c) {
        for (Eigen::Index p = 0; p < out_len; ++p) {
            if (mode == PoolMode::Max) {
                Eigen::Index best = p * width;
                for (int j = 1; j < width; ++j)
                    if (in(c, p * width + j) > in(c, best)) best = p * width + j;
                argmax_(c, p) = static_cast<int>(best);
                out(c, p) = in(c, best);
            } else {
                out(c, p) = in.row(c).segment(p * width, width).mean();
            }
        }
    }
    return out;
}

Eigen::MatrixXd Pool1D::backward(const Eigen::MatrixXd& grad_out) {
    Eigen::MatrixXd gin = Eigen::MatrixXd::Zero(grad_out.rows(), in_len_);
    for (Eigen::Index c = 0; c < grad_out.rows(); ++c) {
        for (Eigen::Index p = 0; p < grad_out.cols(); ++p) {
            if (mode == PoolMode::Max) {
                gin(c, argmax_(c, p)) += grad_out(c, p);
            } else {
                for (int j = 0; j < width; ++j) gin(c, p * width + j) += grad_out(c, p) / width;
            }
        }
    }
    return gin;
}

// --------------------------------------------------------------- Flatten

Eigen::MatrixXd Flatten::forward(const Eigen::MatrixXd& in, bool, Rng*) {
    rows_ = in.rows();
    cols_ = in.cols();
    Eigen::MatrixXd out(rows_ * cols_, 1);
    for (Eigen::Index c = 0; c < rows_; ++c)
        for (Eigen::Index l = 0; l < cols_; ++l) out(c * cols_ + l, 0) = in(c, l);
    return out;
}

Eigen::MatrixXd Flatten::backward(const Eigen::MatrixXd& grad_out) {
    Eigen::MatrixXd gin(rows_, cols_);
    for (Eigen::Index c = 0; c < rows_; ++c)
        for (Eigen::Index l = 0; l < cols_; ++l) gin(c, l) = grad_out(c * cols_ + l, 0);
    return gin;
}

// ----------------------------------------------------------------- Dense

Dense::Dense(int in_dim, int out_dim)
    : w(Eigen::MatrixXd::Zero(out_dim, in_dim)), b(Eigen::MatrixXd::Zero(out_dim, 1)),
      gw(Eigen::MatrixXd::Zero(out_dim, in_dim)), gb(Eigen::MatrixXd::Zero(out_dim, 1)) {}

Eigen::MatrixXd Dense::forward(const Eigen::MatrixXd& in, bool, Rng*) {
    if (in.rows() != w.cols() || in.cols() != 1) throw ShapeMismatch("dense: bad input shape");
    cache_in_ = in;
    return w * in + b;
}

Eigen::MatrixXd Dense::backward(const Eigen::MatrixXd& grad_out) {
    gw += grad_out * cache_in_.transpose();
    gb += grad_out;
    return w.transpose() * grad_out;
}

// --------------------------------------------------------------- Dropout

Eigen::MatrixXd Dropout::forward(const Eigen::MatrixXd& in, bool train, Rng* rng) {
    if (!train || rate <= 0.0 || rng == nullptr) {
        mask_.resize(0, 0);
        return in;
    }
    const double keep = 1.0 - rate;
    mask_.resize(in.rows(), in.cols());
    for (Eigen::Index j = 0; j < in.cols(); ++j)
        for (Eigen::Index i = 0; i < in.rows(); ++i)
            mask_(i, j) = rng->uniform() < keep ? 1.0 / keep : 0.0;
    return in.cwiseProduct(mask_);
}

Eigen::MatrixXd Dropout::backward(const Eigen::MatrixXd& grad_out) {
    if (mask_.size() == 0) return grad_out;
    return grad_out.cwiseProduct(mask_);
}

// -------------------------------------------------------------- CnnModel

namespace {

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
    Eigen::VectorXd z = (logits.array() - logits.maxCoeff()).exp();
    return z / z.sum();
}

}  // namespace

Eigen::VectorXd CnnModel::forward(const Eigen::VectorXd& input, bool train, Rng* rng) const {
    if (input.size() != input_len) throw ShapeMismatch("forward: input length mismatch");
    Eigen::MatrixXd x = input.transpose();  // (1, input_len)
    for (const auto& layer : layers) x = layer->forward(x, train, rng);
    if (x.rows() != num_classes || x.cols() != 1) throw ShapeMismatch("forward: bad output shape");
    return softmax(x.col(0));
}

double CnnModel::backward(const Eigen::VectorXd& input, int true_label, bool train, Rng* rng) {
    if (true_label < 0 || true_label >= num_classes) throw ShapeMismatch("backward: label out of range");
    const Eigen::VectorXd probs = forward(input, train, rng);
    const double loss = -std::log(std::max(probs[true_label], 1e-300));
    Eigen::MatrixXd grad = probs;  // softmax cross-entropy: dL/dlogits = p - onehot
    grad(true_label, 0) -= 1.0;
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) grad = (*it)->backward(grad);
    return loss;
}

void CnnModel::zero_grads() {
    for (const auto& layer : layers) layer->zero_grads();
}

std::size_t CnnModel::param_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers)
        for (const Eigen::MatrixXd* p : layer->params()) n += static_cast<std::size_t>(p->size());
    return n;
}

std::vector<Eigen::MatrixXd*> CnnModel::all_params() {
    std::vector<Eigen::MatrixXd*> out;
    for (const auto& layer : layers)
        for (Eigen::MatrixXd* p : layer->params()) out.push_back(p);
    return out;
}

std::vector<Eigen::MatrixXd*> CnnModel::all_grads() {
    std::vector<Eigen::MatrixXd*> out;
    for (const auto& layer : layers)
        for (Eigen::MatrixXd* g : layer->grads()) out.push_back(g);
    return out;
}

namespace {

void init_fan_in(Eigen::MatrixXd& w, Eigen::Index fan_in, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (Eigen::Index j = 0; j < w.cols(); ++j)
        for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = limit * (2.0 * rng.uniform() - 1.0);
}

}  // namespace

CnnModel reference_model(int input_len, std::uint64_t init_seed, double dropout_rate, PoolMode pool) {
    CnnModel m;
    m.input_len = input_len;
    Rng rng(init_seed);

    struct ConvSpec {
        int out_ch, kernel;
    };
    const ConvSpec convs[] = {{16, 5}, {32, 5}, {32, 3}};

    int ch = 1;
    int len = input_len;
    for (const auto& cs : convs) {
        auto conv = std::make_unique<Conv1D>(ch, cs.out_ch, cs.kernel);
        init_fan_in(conv->w, static_cast<Eigen::Index>(ch) * cs.kernel, rng);
        m.layers.push_back(std::move(conv));
        m.layers.push_back(std::make_unique<Relu>());
        m.layers.push_back(std::make_unique<Pool1D>(2, pool));
        len = (len - cs.kernel + 1) / 2;
        ch = cs.out_ch;
        if (len < 1) throw ShapeMismatch("reference_model: input too short for the conv stack");
    }
    m.layers.push_back(std::make_unique<Flatten>());

    int dim = ch * len;
    for (int width : {64, 32}) {
        auto dense = std::make_unique<Dense>(dim, width);
        init_fan_in(dense->w, dim, rng);
        m.layers.push_back(std::move(dense));
        m.layers.push_back(std::make_unique<Relu>());
        m.layers.push_back(std::make_unique<Dropout>(dropout_rate));
        dim = width;
    }
    auto out = std::make_unique<Dense>(dim, 3);
    init_fan_in(out->w, dim, rng);
    m.layers.push_back(std::move(out));
    return m;
}

// ------------------------------------------------------------------ ADAM

void adam_step(AdamState& state, std::vector<Eigen::MatrixXd*> weights,
               const std::vector<Eigen::MatrixXd*>& gradients, double base_lr, double decay) {
    if (weights.size() != gradients.size()) throw ShapeMismatch("adam_step: weight/gradient count mismatch");
    if (state.m.empty()) {
        for (const Eigen::MatrixXd* w : weights) {
            state.m.emplace_back(Eigen::MatrixXd::Zero(w->rows(), w->cols()));
            state.v.emplace_back(Eigen::MatrixXd::Zero(w->rows(), w->cols()));
        }
    }
    const double lr_t = base_lr / (1.0 + decay * static_cast<double>(state.t));
    ++state.t;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        Eigen::MatrixXd& w = *weights[i];
        const Eigen::MatrixXd& g = *gradients[i];
        if (w.rows() != g.rows() || w.cols() != g.cols()) throw ShapeMismatch("adam_step: shape mismatch");
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g.cwiseProduct(g);
        w.array() -= lr_t * (state.m[i].array() / bc1) /
                     ((state.v[i].array() / bc2).sqrt() + state.eps);
    }
}

// -------------------------------------------------------------- training

int map_label(int label, LabelScheme scheme) {
    switch (scheme) {
        case LabelScheme::Identity:
            if (label < 0 || label > 2) throw UnmappedLabel("label outside {0,1,2}");
            return label;
        case LabelScheme::MergeLowScores:
            if (label < 0 || label > 3) throw UnmappedLabel("label outside {0..3}");
            return label <= 1 ? 0 : label - 1;
        default:
            throw Error("map_label: Auto scheme must be resolved against a dataset first");
    }
}

namespace {

LabelScheme resolve_scheme(const Dataset& d, LabelScheme scheme) {
    if (scheme != LabelScheme::Auto) return scheme;
    bool beyond_two = false;
    for (const auto& it : d.items) {
        if (it.label < 0 || it.label > 3) throw UnmappedLabel("label outside {0..3}");
        if (it.label > 2) beyond_two = true;
    }
    return beyond_two ? LabelScheme::MergeLowScores : LabelScheme::Identity;
}

void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
    for (std::size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[rng.uniform_int(0, i - 1)]);
}

double accuracy_on(const CnnModel& model, const std::vector<Eigen::VectorXd>& xs,
                   const std::vector<int>& ys, const std::vector<std::size_t>& idx) {
    if (idx.empty()) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i : idx) {
        Eigen::Index pred;
        model.forward(xs[i]).maxCoeff(&pred);
        if (static_cast<int>(pred) == ys[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(idx.size());
}

}  // namespace

TrainResult train(const Dataset& dataset, const TrainConfig& cfg, LabelScheme scheme) {
    if (dataset.empty()) throw EmptyDataset("train: empty dataset");
    const LabelScheme resolved = resolve_scheme(dataset, scheme);

    std::vector<Eigen::VectorXd> xs;
    std::vector<int> ys;
    xs.reserve(dataset.size());
    for (const auto& it : dataset.items) {
        xs.push_back(canonicalize_length(it.series, cfg.input_len).values);
        ys.push_back(map_label(it.label, resolved));
    }

    // stratified split
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ys.size(); ++i) by_class[ys[static_cast<std::size_t>(i)]].push_back(i);
    Rng split_rng(mix_seed(cfg.seed, "split", 0));
    std::vector<std::size_t> train_idx, val_idx;
    for (auto& [label, idx] : by_class) {
        shuffle_indices(idx, split_rng);
        auto n_tr = static_cast<std::size_t>(
            std::llround(cfg.train_fraction * static_cast<double>(idx.size())));
        n_tr = std::clamp<std::size_t>(n_tr, 1, idx.size());
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_tr));
        val_idx.insert(val_idx.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_tr), idx.end());
    }

    TrainResult result;
    result.model = reference_model(cfg.input_len, mix_seed(cfg.seed, "init", 0), cfg.dropout_rate);
    AdamState adam;
    Rng train_rng(mix_seed(cfg.seed, "train", 0));

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_indices(train_idx, train_rng);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < train_idx.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end = std::min(train_idx.size(), start + static_cast<std::size_t>(cfg.batch_size));
            result.model.zero_grads();
            for (std::size_t i = start; i < end; ++i)
                loss_sum += result.model.backward(xs[train_idx[i]], ys[train_idx[i]], true, &train_rng);
            const double inv_bn = 1.0 / static_cast<double>(end - start);
            auto grads = result.model.all_grads();
            for (Eigen::MatrixXd* g : grads) *g *= inv_bn;
            adam_step(adam, result.model.all_params(), grads, cfg.learning_rate, cfg.decay);
        }
        EpochStats stats;
        stats.train_loss = loss_sum / static_cast<double>(train_idx.size());
        stats.train_accuracy = accuracy_on(result.model, xs, ys, train_idx);
        stats.val_accuracy = accuracy_on(result.model, xs, ys, val_idx);
        result.history.push_back(stats);
    }
    return result;
}

EvalResult evaluate(const CnnModel& model, const Dataset& dataset, LabelScheme scheme) {
    if (dataset.empty()) throw EmptyDataset("evaluate: empty dataset");
    const LabelScheme resolved = resolve_scheme(dataset, scheme);
    EvalResult r;
    r.confusion = Eigen::MatrixXi::Zero(model.num_classes, model.num_classes);
    std::size_t correct = 0;
    for (const auto& it : dataset.items) {
        const int y = map_label(it.label, resolved);
        Eigen::Index pred;
        model.forward(canonicalize_length(it.series, model.input_len).values).maxCoeff(&pred);
        r.confusion(y, static_cast<int>(pred)) += 1;
        if (static_cast<int>(pred) == y) ++correct;
    }
    r.accuracy = static_cast<double>(correct) / static_cast<double>(dataset.size());
    return r;
}

// ----------------------------------------------------------- persistence

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r > 0 ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>();
    return m;
}

}  // namespace

void save_model(const CnnModel& model, const std::string& path) {
    json doc;
    doc["format"] = "ssaug-cnn-v1";
    doc["input_len"] = model.input_len;
    doc["num_classes"] = model.num_classes;
    json layers = json::array();
    for (const auto& layer : model.layers) {
        json l;
        l["kind"] = layer->kind();
        if (const auto* conv = dynamic_cast<const Conv1D*>(layer.get())) {
            l["in_ch"] = conv->in_ch;
            l["out_ch"] = conv->out_ch;
            l["kernel"] = conv->kernel;
            l["w"] = matrix_to_json(conv->w);
        } else if (const auto* dense = dynamic_cast<const Dense*>(layer.get())) {
            l["w"] = matrix_to_json(dense->w);
            l["b"] = matrix_to_json(dense->b);
        } else if (const auto* pool = dynamic_cast<const Pool1D*>(layer.get())) {
            l["width"] = pool->width;
            l["mode"] = pool->mode == PoolMode::Max ? "max" : "average";
        } else if (const auto* drop = dynamic_cast<const Dropout*>(layer.get())) {
            l["rate"] = drop->rate;
        }
        layers.push_back(std::move(l));
    }
    doc["layers"] = std::move(layers);
    std::ofstream out(path);
    if (!out) throw Error("cannot open model file for writing: " + path);
    out << doc.dump(1) << '\n';
}

CnnModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file: " + path);
    json doc = json::parse(in);
    if (doc.value("format", "") != "ssaug-cnn-v1") throw ParseError("unknown model format: " + path);
    CnnModel m;
    m.input_len = doc.at("input_len").get<int>();
    m.num_classes = doc.at("num_classes").get<int>();
    for (const json& l : doc.at("layers")) {
        const std::string kind = l.at("kind").get<std::string>();
        if (kind == "conv1d") {
            auto conv = std::make_unique<Conv1D>(l.at("in_ch").get<int>(), l.at("out_ch").get<int>(),
                                                 l.at("kernel").get<int>());
            conv->w = matrix_from_json(l.at("w"));
            m.layers.push_back(std::move(conv));
        } else if (kind == "relu") {
            m.layers.push_back(std::make_unique<Relu>());
        } else if (kind == "pool") {
            m.layers.push_back(std::make_unique<Pool1D>(
                l.at("width").get<int>(),
                l.at("mode").get<std::string>() == "max" ? PoolMode::Max : PoolMode::Average));
        } else if (kind == "flatten") {
            m.layers.push_back(std::make_unique<Flatten>());
        } else if (kind == "dense") {
            Eigen::MatrixXd w = matrix_from_json(l.at("w"));
            auto dense = std::make_unique<Dense>(static_cast<int>(w.cols()), static_cast<int>(w.rows()));
            dense->w = std::move(w);
            dense->b = matrix_from_json(l.at("b"));
            m.layers.push_back(std::move(dense));
        } else if (kind == "dropout") {
            m.layers.push_back(std::make_unique<Dropout>(l.at("rate").get<double>()));
        } else {
            throw ParseError("unknown layer kind: " + kind);
        }
    }
    return m;
}

}  // namespace ssaug
