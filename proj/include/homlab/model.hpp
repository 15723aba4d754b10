#pragma once

#include "homlab/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace homlab {

using ColorSet = std::uint32_t;  // bit c set <=> color c present

inline constexpr int kMaxColors = 16;

/// Finite weighted target H: symmetric nonnegative edge weights over q colors
/// (diagonal entries are loop weights), vertex weights, and the looped-color
/// subset used by semiproper-coloring models.
class Model {
public:
    Model() = default;
    Model(int q, std::vector<Rational> edge_weights, std::vector<Rational> vertex_weights,
          ColorSet looped, std::string name = {});

    int q() const noexcept { return q_; }
    const Rational& weight(int i, int j) const { return edge_weights_[index(i, j)]; }
    const Rational& vertex_weight(int i) const { return vertex_weights_[static_cast<std::size_t>(i)]; }
    const std::vector<Rational>& edge_weights() const noexcept { return edge_weights_; }
    const std::vector<Rational>& vertex_weights() const noexcept { return vertex_weights_; }
    ColorSet looped() const noexcept { return looped_; }
    const std::string& name() const noexcept { return name_; }

    /// Same model with every edge weight multiplied by factor > 0.
    Model scaled(const Rational& factor) const;

    friend bool operator==(const Model& a, const Model& b) {
        return a.q_ == b.q_ && a.edge_weights_ == b.edge_weights_ &&
               a.vertex_weights_ == b.vertex_weights_ && a.looped_ == b.looped_;
    }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(j);
    }

    int q_ = 0;
    std::vector<Rational> edge_weights_;
    std::vector<Rational> vertex_weights_;
    ColorSet looped_ = 0;
    std::string name_;
};

ColorSet full_color_set(int q);
int color_count(ColorSet s);

// Named families -------------------------------------------------------------

/// K_q with the first ell colors looped.
Model model_complete_looped(int q, int ell);

/// K_q with an arbitrary looped subset.
Model model_semiproper(int q, ColorSet looped);

Model model_h_eps(const Rational& eps);
Model model_widom_rowlinson();
Model model_hardcore();
Model model_two_spin(const Rational& w00, const Rational& w01, const Rational& w11,
                     const Rational& v0, const Rational& v1);

enum class RandomModelKind { General, Psd, Antiferro2Spin, Ferro2Spin };

std::string_view to_string(RandomModelKind kind);
RandomModelKind parse_random_model_kind(std::string_view text);

/// Deterministic in (q, seed, kind). General entries and the factor matrix of
/// the psd kind are rationals with numerators and denominators at most 16.
Model random_model(int q, std::uint64_t seed, RandomModelKind kind);

// Classification -------------------------------------------------------------

struct Classification {
    bool ferromagnetic = false;
    bool antiferromagnetic = false;
    int positive_eigen_count = 0;
    int zero_eigen_count = 0;
    int negative_eigen_count = 0;
};

Classification classify_model(const Model& m);

// Serialization --------------------------------------------------------------

nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);

/// "Kq:3", "Kq-looped:5,2", "hardcore", "wr", "heps:1/10",
/// "ising:w00,w01,w11", "random:<kind>:<q>:<seed>", or a JSON model file path.
Model load_model(std::string_view spec);

}  // namespace homlab
