#include "bsc/dense_space.hpp"

#include <fstream>
#include <random>
#include <string>

namespace bsc {

namespace {

constexpr int kBfsCacheVersion = 1;
const char* kAnchorMetric = "breadth-first distance from 0 equals rank(v) for every vertex";
const char* kAnchorSpheres = "|Gamma_i(0)| = b_0...b_{i-1}/(c_1...c_i) and the spheres cover X";

MatVertex decode(std::uint64_t code, int rows, int cols, int q)
{
    MatVertex m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            m.set(r, c, static_cast<std::uint8_t>(code % q));
            code /= q;
        }
    return m;
}

}  // namespace

BfsAuditReport bfs_distance_audit(const GraphParams& p, std::uint64_t limit)
{
    p.validate();
    const BigInt total = p.vertex_count();
    if (total > limit)
        throw InvalidParameters("BFS audit needs " + total.str() + " vertices, limit is " + std::to_string(limit));
    const PrimeField f(p.q);
    const int rows = p.D, cols = p.cols(), q = p.q;
    const std::uint64_t n = static_cast<std::uint64_t>(total);
    std::uint64_t row_span = 1;
    for (int c = 0; c < cols; ++c) row_span *= q;

    // Row codes are base-q digits; addition of two rows is one table lookup.
    std::vector<std::uint32_t> row_add(row_span * row_span);
    for (std::uint64_t a = 0; a < row_span; ++a)
        for (std::uint64_t b = 0; b < row_span; ++b) {
            std::uint64_t s = 0, ta = a, tb = b, place = 1;
            for (int c = 0; c < cols; ++c) {
                s += ((ta % q + tb % q) % q) * place;
                ta /= q;
                tb /= q;
                place *= q;
            }
            row_add[a * row_span + b] = static_cast<std::uint32_t>(s);
        }
    std::vector<std::vector<std::uint32_t>> offset_rows;
    for (const MatVertex& m : enumerate_rank_one(f, rows, cols)) {
        std::vector<std::uint32_t> rc(rows);
        for (int r = 0; r < rows; ++r) {
            std::uint64_t code = 0, place = 1;
            for (int c = 0; c < cols; ++c, place *= q) code += m(r, c) * place;
            rc[r] = static_cast<std::uint32_t>(code);
        }
        offset_rows.push_back(std::move(rc));
    }

    std::vector<std::uint8_t> dist(n, 0xff);
    std::vector<std::uint32_t> frontier{0}, next;
    dist[0] = 0;
    std::vector<std::uint32_t> vr(rows);
    for (std::uint8_t level = 0; !frontier.empty(); ++level) {
        next.clear();
        for (std::uint32_t v : frontier) {
            std::uint64_t t = v;
            for (int r = 0; r < rows; ++r) {
                vr[r] = static_cast<std::uint32_t>(t % row_span);
                t /= row_span;
            }
            for (const auto& off : offset_rows) {
                std::uint64_t code = 0;
                for (int r = rows - 1; r >= 0; --r) code = code * row_span + row_add[vr[r] * row_span + off[r]];
                if (dist[code] == 0xff) {
                    dist[code] = static_cast<std::uint8_t>(level + 1);
                    next.push_back(static_cast<std::uint32_t>(code));
                }
            }
        }
        frontier.swap(next);
    }

    BfsAuditReport rep;
    rep.vertices = n;
    for (std::uint64_t v = 0; v < n; ++v) {
        if (dist[v] == 0xff) continue;
        ++rep.visited;
        if (rep.sphere_sizes.size() <= dist[v]) rep.sphere_sizes.resize(dist[v] + 1, 0);
        ++rep.sphere_sizes[dist[v]];
        const MatVertex m = decode(v, rows, cols, q);
        const int r = rank(f, m);
        if (r != dist[v] && rep.rank_mismatches++ == 0)
            rep.first_mismatch = json{{"vertex", m.to_string()}, {"bfs", dist[v]}, {"rank", r}};
    }
    return rep;
}

std::vector<CheckResult> bfs_audit_checks(const GraphParams& p, std::uint64_t limit)
{
    if (p.vertex_count() > limit) {
        const std::string reason = "|X| = " + p.vertex_count().str() + " exceeds the audit limit " + std::to_string(limit);
        return {make_skipped("bfs-rank-metric", kAnchorMetric, reason), make_skipped("bfs-sphere-sizes", kAnchorSpheres, reason)};
    }
    const BfsAuditReport rep = bfs_distance_audit(p, limit);
    std::vector<CheckResult> out;
    {
        CheckBuilder b("bfs-rank-metric", kAnchorMetric);
        b.require(rep.visited == rep.vertices, json{{"visited", rep.visited}, {"vertices", rep.vertices}});
        b.require(rep.rank_mismatches == 0, json{{"mismatches", rep.rank_mismatches}, {"first", rep.first_mismatch}});
        b.note("vertices", rep.vertices);
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("bfs-sphere-sizes", kAnchorSpheres);
        b.require(rep.sphere_sizes.size() == static_cast<std::size_t>(p.D + 1), json{{"diameter", rep.sphere_sizes.size() - 1}});
        json sizes = json::array();
        for (std::size_t i = 0; i < rep.sphere_sizes.size(); ++i) {
            sizes.push_back(rep.sphere_sizes[i]);
            if (i <= static_cast<std::size_t>(p.D))
                b.require(BigInt(rep.sphere_sizes[i]) == sphere_size(p, static_cast<int>(i)),
                          json{{"i", i}, {"counted", rep.sphere_sizes[i]}, {"closed_form", sphere_size(p, static_cast<int>(i)).str()}});
        }
        b.note("sphere_sizes", sizes);
        out.push_back(b.finish());
    }
    return out;
}

std::vector<CheckResult> bfs_audit_checks_cached(const GraphParams& p, const std::filesystem::path& cache_dir,
                                                 std::uint64_t limit)
{
    if (cache_dir.empty()) return bfs_audit_checks(p, limit);
    const auto file = cache_dir / ("bfs-q" + std::to_string(p.q) + "-D" + std::to_string(p.D) + "-N" +
                                   std::to_string(p.N) + ".json");
    if (std::ifstream is{file}) {
        try {
            const json j = json::parse(is);
            if (j.at("version").get<int>() == kBfsCacheVersion) {
                std::vector<CheckResult> out;
                for (const auto& r : j.at("checks")) out.push_back(result_from_json(r));
                return out;
            }
        } catch (const std::exception&) {
        }
    }
    auto out = bfs_audit_checks(p, limit);
    bool all_pass = true;
    for (const auto& r : out) all_pass = all_pass && r.passed();
    if (all_pass) {
        json j{{"version", kBfsCacheVersion}, {"checks", json::array()}};
        for (const auto& r : out) j["checks"].push_back(to_json(r, false));
        std::filesystem::create_directories(cache_dir);
        std::ofstream(file) << j.dump(2) << '\n';
    }
    return out;
}

DenseCodec::DenseCodec(const GraphParams& p, std::uint64_t limit) : q_(p.q), rows_(p.D), cols_(p.cols())
{
    p.validate();
    if (p.vertex_count() > limit)
        throw InvalidParameters("dense encoding needs " + p.vertex_count().str() + " vertices, limit is " + std::to_string(limit));
    row_span_ = 1;
    for (int c = 0; c < cols_; ++c) row_span_ *= q_;
    row_sub_.resize(std::size_t(row_span_) * row_span_);
    for (std::uint32_t a = 0; a < row_span_; ++a)
        for (std::uint32_t b = 0; b < row_span_; ++b) {
            std::uint32_t s = 0, ta = a, tb = b, place = 1;
            for (int c = 0; c < cols_; ++c) {
                s += ((ta % q_ + q_ - tb % q_) % q_) * place;
                ta /= q_;
                tb /= q_;
                place *= q_;
            }
            row_sub_[std::size_t(a) * row_span_ + b] = s;
        }
    const PrimeField f(q_);
    const std::uint64_t n = static_cast<std::uint64_t>(p.vertex_count());
    rank_.resize(n);
    for (std::uint64_t v = 0; v < n; ++v) rank_[v] = static_cast<std::uint8_t>(rank(f, decode(static_cast<std::uint32_t>(v))));
}

std::uint32_t DenseCodec::encode(const MatVertex& m) const
{
    std::uint32_t code = 0;
    for (int r = rows_ - 1; r >= 0; --r)
        for (int c = cols_ - 1; c >= 0; --c) code = code * q_ + m(r, c);
    return code;
}

MatVertex DenseCodec::decode(std::uint32_t code) const
{
    return bsc::decode(code, rows_, cols_, q_);
}

void DenseCodec::split(std::uint32_t code, std::uint32_t* row_codes) const
{
    for (int r = 0; r < rows_; ++r) {
        row_codes[r] = code % row_span_;
        code /= row_span_;
    }
}

CheckResult rank_metric_spot_checks(const LocalContext& ctx, int samples, std::uint64_t seed)
{
    const GraphParams& p = ctx.params();
    const PrimeField& f = ctx.field();
    CheckBuilder b("rank-metric-spot-checks",
                   "rank distance satisfies the triangle inequality and every vertex at rank distance d > 0 "
                   "has a neighbour at d - 1 and none below");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, 2 * ctx.kappa() + 1);
    auto vertex = [&](std::size_t i) {
        if (i == 0) return ctx.x();
        if (i == 1) return ctx.y();
        i -= 2;
        return i < ctx.kappa() ? ctx.neighbor_x(i) : ctx.neighbor_y(i - ctx.kappa());
    };
    for (int s = 0; s < samples * 20; ++s) {
        const MatVertex a = vertex(pick(rng)), c = vertex(pick(rng)), d = vertex(pick(rng));
        const int ac = rank_distance(f, a, c), cd = rank_distance(f, c, d), ad = rank_distance(f, a, d);
        b.require(ad <= ac + cd, json{{"a", a.to_string()}, {"b", c.to_string()}, {"c", d.to_string()}});
    }
    std::uniform_int_distribution<int> entry(0, p.q - 1);
    for (int s = 0; s < samples; ++s) {
        MatVertex v(p.D, p.cols());
        for (int r = 0; r < p.D; ++r)
            for (int c = 0; c < p.cols(); ++c) v.set(r, c, static_cast<std::uint8_t>(entry(rng)));
        const int dv = rank_distance(f, v, ctx.x());
        if (dv == 0) continue;
        bool closer = false, jump = false;
        for (const MatVertex& off : ctx.offsets()) {
            const int dn = rank_distance(f, mat_add(f, v, off), ctx.x());
            closer = closer || dn == dv - 1;
            jump = jump || dn < dv - 1 || dn > dv + 1;
        }
        b.require(closer && !jump, json{{"v", v.to_string()}, {"rank", dv}, {"has_closer", closer}, {"jump", jump}});
    }
    b.note("samples", samples);
    return b.finish();
}

}  // namespace bsc
