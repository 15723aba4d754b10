#include "homlab/model.hpp"

#include "homlab/errors.hpp"
#include "homlab/spectrum.hpp"
#include "random_util.hpp"

#include <bit>
#include <cctype>
#include <limits>
#include <fstream>
#include <random>
#include <sstream>

namespace homlab {

using detail::draw;
using detail::small_rational;
using detail::splitmix64;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

int parse_int(std::string_view text, std::string_view context) {
    Rational r = parse_rational(text);
    if (!is_integer(r) || !r.get_num().fits_sint_p())
        fail(ErrorKind::ParseError, "expected an integer in '" + std::string(context) + "'");
    return static_cast<int>(r.get_num().get_si());
}

ColorSet looped_from_diagonal(int q, const std::vector<Rational>& w) {
    ColorSet s = 0;
    for (int i = 0; i < q; ++i)
        if (w[static_cast<std::size_t>(i * q + i)] != 0) s |= ColorSet{1} << i;
    return s;
}

}  // namespace

Model::Model(int q, std::vector<Rational> edge_weights, std::vector<Rational> vertex_weights, ColorSet looped,
             std::string name)
    : q_(q),
      edge_weights_(std::move(edge_weights)),
      vertex_weights_(std::move(vertex_weights)),
      looped_(looped),
      name_(std::move(name)) {
    if (q < 1 || q > kMaxColors) fail(ErrorKind::InvalidArgument, "color count must be in 1..16");
    if (edge_weights_.size() != static_cast<std::size_t>(q * q))
        fail(ErrorKind::DimensionMismatch, "edge weight matrix must be q x q");
    if (vertex_weights_.size() != static_cast<std::size_t>(q))
        fail(ErrorKind::DimensionMismatch, "vertex weight vector must have length q");
    for (auto& w : edge_weights_) {
        w.canonicalize();
        if (w < 0) fail(ErrorKind::NegativeWeight, "negative edge weight");
    }
    for (auto& w : vertex_weights_) {
        w.canonicalize();
        if (w < 0) fail(ErrorKind::NegativeWeight, "negative vertex weight");
    }
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            if (weight(i, j) != weight(j, i)) fail(ErrorKind::NonSymmetric, "edge weights are not symmetric");
    if ((looped_ & ~full_color_set(q)) != 0) fail(ErrorKind::InvalidArgument, "looped set outside the colors");
}

Model Model::scaled(const Rational& factor) const {
    if (factor <= 0) fail(ErrorKind::InvalidArgument, "scale factor must be positive");
    std::vector<Rational> w = edge_weights_;
    for (auto& x : w) x *= factor;
    return Model(q_, w, vertex_weights_, looped_, name_);
}

ColorSet full_color_set(int q) { return q >= 32 ? ~ColorSet{0} : (ColorSet{1} << q) - 1; }

int color_count(ColorSet s) { return std::popcount(s); }

Model model_complete_looped(int q, int ell) {
    if (q < 1) fail(ErrorKind::InvalidArgument, "need q >= 1");
    if (ell < 0 || ell > q) fail(ErrorKind::InvalidArgument, "looped count must be in 0..q");
    Model m = model_semiproper(q, full_color_set(ell));
    std::string name = ell == 0 ? "Kq:" + std::to_string(q) : "Kq-looped:" + std::to_string(q) + "," + std::to_string(ell);
    return Model(q, m.edge_weights(), m.vertex_weights(), m.looped(), name);
}

Model model_semiproper(int q, ColorSet looped) {
    if (q < 1 || q > kMaxColors) fail(ErrorKind::InvalidArgument, "color count must be in 1..16");
    std::vector<Rational> w(static_cast<std::size_t>(q * q), Rational(1));
    for (int i = 0; i < q; ++i) w[static_cast<std::size_t>(i * q + i)] = (looped >> i) & 1u ? 1 : 0;
    return Model(q, w, std::vector<Rational>(static_cast<std::size_t>(q), Rational(1)), looped,
                 "semiproper:" + std::to_string(q));
}

Model model_h_eps(const Rational& eps) {
    if (eps < 0) fail(ErrorKind::InvalidArgument, "eps must be nonnegative");
    Rational loop = 1 + 2 * eps;
    return Model(2, {loop, 1, 1, loop}, {make_rational(1, 2), make_rational(1, 2)}, 3,
                 "heps:" + format_rational(eps));
}

Model model_widom_rowlinson() {
    return Model(3, {1, 1, 0, 1, 1, 1, 0, 1, 1}, {1, 1, 1}, 7, "wr");
}

Model model_hardcore() { return Model(2, {1, 1, 1, 0}, {1, 1}, 1, "hardcore"); }

Model model_two_spin(const Rational& w00, const Rational& w01, const Rational& w11, const Rational& v0,
                     const Rational& v1) {
    for (const auto* x : {&w00, &w01, &w11, &v0, &v1})
        if (*x < 0) fail(ErrorKind::NegativeWeight, "2-spin weights must be nonnegative");
    std::vector<Rational> w{w00, w01, w01, w11};
    std::string name = "ising:" + format_rational(w00) + "," + format_rational(w01) + "," + format_rational(w11);
    if (v0 != 1 || v1 != 1) name += ";" + format_rational(v0) + "," + format_rational(v1);
    return Model(2, w, {v0, v1}, looped_from_diagonal(2, w), name);
}

std::string_view to_string(RandomModelKind kind) {
    switch (kind) {
        case RandomModelKind::General: return "general";
        case RandomModelKind::Psd: return "psd";
        case RandomModelKind::Antiferro2Spin: return "antiferro-2spin";
        case RandomModelKind::Ferro2Spin: return "ferro-2spin";
    }
    return "general";
}

RandomModelKind parse_random_model_kind(std::string_view text) {
    for (auto k : {RandomModelKind::General, RandomModelKind::Psd, RandomModelKind::Antiferro2Spin,
                   RandomModelKind::Ferro2Spin})
        if (to_string(k) == text) return k;
    fail(ErrorKind::ParseError, "unknown random model kind '" + std::string(text) + "'");
}

Model random_model(int q, std::uint64_t seed, RandomModelKind kind) {
    if (q < 1 || q > 8) fail(ErrorKind::InvalidArgument, "random models need 1 <= q <= 8");
    const bool two_spin = kind == RandomModelKind::Antiferro2Spin || kind == RandomModelKind::Ferro2Spin;
    if (two_spin && q != 2) fail(ErrorKind::NotTwoSpin, "2-spin random models need q = 2");
    std::uint64_t mixed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(q) * 131 + static_cast<std::uint64_t>(kind)));
    std::mt19937_64 rng(mixed);
    const std::string name = "random:" + std::string(to_string(kind)) + ":" + std::to_string(q) + ":" + std::to_string(seed);
    std::vector<Rational> vw;
    for (int i = 0; i < q; ++i) vw.push_back(small_rational(rng, 1, 16, 16));
    std::vector<Rational> w(static_cast<std::size_t>(q * q));
    switch (kind) {
        case RandomModelKind::General:
            for (int i = 0; i < q; ++i)
                for (int j = i; j < q; ++j) {
                    Rational x = small_rational(rng, 0, 16, 16);
                    w[static_cast<std::size_t>(i * q + j)] = x;
                    w[static_cast<std::size_t>(j * q + i)] = x;
                }
            break;
        case RandomModelKind::Psd: {
            std::vector<Rational> b(static_cast<std::size_t>(q * q));
            for (auto& x : b) x = small_rational(rng, 0, 4, 4);
            for (int i = 0; i < q; ++i)
                for (int j = 0; j < q; ++j) {
                    Rational s = 0;
                    for (int r = 0; r < q; ++r) s += b[static_cast<std::size_t>(r * q + i)] * b[static_cast<std::size_t>(r * q + j)];
                    w[static_cast<std::size_t>(i * q + j)] = s;
                }
            break;
        }
        case RandomModelKind::Antiferro2Spin:
        case RandomModelKind::Ferro2Spin: {
            Rational w00, w01, w11;
            while (true) {
                w00 = small_rational(rng, 0, 16, 16);
                w01 = small_rational(rng, 0, 16, 16);
                w11 = small_rational(rng, 0, 16, 16);
                bool anti = w00 * w11 <= w01 * w01;
                bool ferro = w00 * w11 >= w01 * w01;
                if (kind == RandomModelKind::Antiferro2Spin ? anti : ferro) break;
            }
            w = {w00, w01, w01, w11};
            break;
        }
    }
    return Model(q, w, vw, looped_from_diagonal(q, w), name);
}

Classification classify_model(const Model& m) {
    Inertia in = symmetric_inertia(m.edge_weights(), m.q());
    Classification c;
    c.positive_eigen_count = in.positive;
    c.zero_eigen_count = in.zero;
    c.negative_eigen_count = in.negative;
    c.ferromagnetic = in.negative == 0;
    c.antiferromagnetic = in.positive <= 1;
    return c;
}

nlohmann::json model_to_json(const Model& m) {
    nlohmann::json j;
    j["q"] = m.q();
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.q(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < m.q(); ++k) row.push_back(format_rational(m.weight(i, k)));
        rows.push_back(row);
    }
    j["edge_weights"] = rows;
    nlohmann::json vw = nlohmann::json::array();
    for (const auto& x : m.vertex_weights()) vw.push_back(format_rational(x));
    j["vertex_weights"] = vw;
    nlohmann::json looped = nlohmann::json::array();
    for (int i = 0; i < m.q(); ++i)
        if ((m.looped() >> i) & 1u) looped.push_back(i);
    j["looped_set"] = looped;
    if (!m.name().empty()) j["name"] = m.name();
    return j;
}

namespace {

Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    fail(ErrorKind::ParseError, "weights must be \"p/q\" strings or integers");
}

}  // namespace

Model model_from_json(const nlohmann::json& j) {
    try {
        int q = j.at("q").get<int>();
        if (q < 1 || q > kMaxColors) fail(ErrorKind::InvalidArgument, "color count must be in 1..16");
        const auto& rows = j.at("edge_weights");
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(q))
            fail(ErrorKind::DimensionMismatch, "edge_weights must have q rows");
        std::vector<Rational> w;
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != static_cast<std::size_t>(q))
                fail(ErrorKind::DimensionMismatch, "edge_weights rows must have q entries");
            for (const auto& x : row) w.push_back(json_rational(x));
        }
        std::vector<Rational> vw(static_cast<std::size_t>(q), Rational(1));
        if (j.contains("vertex_weights")) {
            const auto& v = j.at("vertex_weights");
            if (!v.is_array() || v.size() != static_cast<std::size_t>(q))
                fail(ErrorKind::DimensionMismatch, "vertex_weights must have q entries");
            for (std::size_t i = 0; i < v.size(); ++i) vw[i] = json_rational(v[i]);
        }
        ColorSet looped = 0;
        if (j.contains("looped_set")) {
            for (const auto& c : j.at("looped_set")) {
                int color = c.get<int>();
                if (color < 0 || color >= q) fail(ErrorKind::InvalidArgument, "looped color out of range");
                looped |= ColorSet{1} << color;
            }
        } else {
            looped = looped_from_diagonal(q, w);
        }
        std::string name = j.value("name", std::string{});
        return Model(q, w, vw, looped, name);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("model JSON: ") + e.what());
    }
}

Model load_model(std::string_view spec_in) {
    std::string_view spec = trim(spec_in);
    auto colon = spec.find(':');
    std::string_view head = spec.substr(0, colon);
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (spec == "hardcore") return model_hardcore();
    if (spec == "wr") return model_widom_rowlinson();
    if (colon != std::string_view::npos) {
        if (head == "Kq") return model_complete_looped(parse_int(rest, spec), 0);
        if (head == "Kq-looped") {
            auto p = split(rest, ',');
            if (p.size() != 2) fail(ErrorKind::ParseError, "expected Kq-looped:q,l");
            return model_complete_looped(parse_int(p[0], spec), parse_int(p[1], spec));
        }
        if (head == "heps") return model_h_eps(parse_rational(rest));
        if (head == "ising") {
            auto p = split(rest, ',');
            if (p.size() != 3) fail(ErrorKind::ParseError, "expected ising:w00,w01,w11");
            return model_two_spin(parse_rational(p[0]), parse_rational(p[1]), parse_rational(p[2]), 1, 1);
        }
        if (head == "random") {
            auto p = split(rest, ':');
            if (p.size() != 3) fail(ErrorKind::ParseError, "expected random:<kind>:<q>:<seed>");
            Rational seed = parse_rational(p[2]);
            if (!is_integer(seed) || seed < 0 || !seed.get_num().fits_ulong_p())
                fail(ErrorKind::ParseError, "random model seed must be a nonnegative integer");
            return random_model(parse_int(p[1], spec), seed.get_num().get_ui(), parse_random_model_kind(p[0]));
        }
    }
    std::ifstream in{std::string(spec)};
    if (!in) fail(ErrorKind::IoError, "not a model name and cannot open file '" + std::string(spec) + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("model file: ") + e.what());
    }
    return model_from_json(j);
}

}  // namespace homlab
