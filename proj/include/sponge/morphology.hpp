#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "core.hpp"
#include "errors.hpp"
#include "point.hpp"
#include "spec.hpp"

namespace sponge {

/// Rectangular grid of vector-valued samples, row-major.
struct Field {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<Point> data;

    const Point& at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    Point& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }

    void validate() const {
        if (width <= 0 || height <= 0 || channels <= 0)
            throw std::invalid_argument("field dimensions must be positive");
        if (data.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("field data length does not match width*height");
        for (const Point& p : data)
            if (static_cast<int>(p.dim()) != channels)
                throw std::invalid_argument("field sample channel mismatch");
    }
};

/// Window of pixel offsets for the morphological operators.
struct StructuringElement {
    std::vector<std::pair<int, int>> offsets;

    bool contains_origin() const {
        for (auto [dx, dy] : offsets)
            if (dx == 0 && dy == 0) return true;
        return false;
    }
};

enum class BoundaryPolicy { Clamp, Shrink, Error };
enum class UnboundedPolicy { Error, Passthrough };

/// Angle windows commonly exceed the cone, so unbounded windows pass the
/// original pixel through by default; for the other families a missing
/// extremum is surfaced as an error.
inline UnboundedPolicy default_unbounded_policy(const SpongeSpec& spec) {
    return spec.family == Family::Angle ? UnboundedPolicy::Passthrough
                                        : UnboundedPolicy::Error;
}

struct MorphResult {
    Field field;
    std::size_t unbounded_pixels = 0;
};

namespace detail {

enum class MorphOp { Dilate, Erode };

inline MorphResult morph_apply(const Field& in, const StructuringElement& se,
                               const SpongeSpec& spec, MorphOp op,
                               BoundaryPolicy boundary, UnboundedPolicy unbounded,
                               double tol, int threads) {
    in.validate();
    if (se.offsets.empty()) throw std::invalid_argument("empty structuring element");
    if (in.channels != spec.dim)
        throw std::invalid_argument("field channels do not match the sponge dimension");

    MorphResult out;
    out.field.width = in.width;
    out.field.height = in.height;
    out.field.channels = in.channels;
    out.field.data.assign(in.data.size(), Point(in.channels, 0.0));

    const int rows = in.height;
    int nthreads = threads > 0 ? threads
                               : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    nthreads = std::min(nthreads, rows);

    std::vector<std::size_t> unbounded_per(nthreads, 0);
    std::vector<std::string> error_per(nthreads);

    auto work = [&](int tid, int y0, int y1) {
        PointSet window;
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < in.width; ++x) {
                window.clear();
                for (auto [dx, dy] : se.offsets) {
                    int sx = x + dx, sy = y + dy;
                    if (sx < 0 || sx >= in.width || sy < 0 || sy >= in.height) {
                        switch (boundary) {
                            case BoundaryPolicy::Shrink: continue;
                            case BoundaryPolicy::Clamp:
                                sx = std::min(std::max(sx, 0), in.width - 1);
                                sy = std::min(std::max(sy, 0), in.height - 1);
                                break;
                            case BoundaryPolicy::Error:
                                error_per[tid] = "window leaves the field at pixel (" +
                                                 std::to_string(x) + "," + std::to_string(y) + ")";
                                return;
                        }
                    }
                    window.push_back(in.at(sx, sy));
                }
                if (window.empty()) {  // all offsets out of bounds under Shrink
                    out.field.at(x, y) = in.at(x, y);
                    continue;
                }
                std::optional<Point> r = op == MorphOp::Dilate ? spec_join(spec, window, tol)
                                                               : spec_meet(spec, window, tol);
                if (r) {
                    out.field.at(x, y) = *r;
                } else {
                    ++unbounded_per[tid];
                    if (unbounded == UnboundedPolicy::Passthrough) {
                        out.field.at(x, y) = in.at(x, y);
                    } else {
                        error_per[tid] = "window has no " +
                                         std::string(op == MorphOp::Dilate ? "join" : "meet") +
                                         " at pixel (" + std::to_string(x) + "," +
                                         std::to_string(y) + ")";
                        return;
                    }
                }
            }
        }
    };

    if (nthreads == 1) {
        work(0, 0, rows);
    } else {
        std::vector<std::thread> pool;
        int chunk = (rows + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            int y0 = t * chunk;
            int y1 = std::min(rows, y0 + chunk);
            if (y0 >= y1) break;
            pool.emplace_back(work, t, y0, y1);
        }
        for (auto& th : pool) th.join();
    }
    for (const std::string& e : error_per)
        if (!e.empty()) throw domain_error(e);
    for (std::size_t u : unbounded_per) out.unbounded_pixels += u;
    return out;
}

}  // namespace detail

inline MorphResult dilate_stats(const Field& in, const StructuringElement& se,
                                const SpongeSpec& spec,
                                BoundaryPolicy boundary = BoundaryPolicy::Shrink,
                                std::optional<UnboundedPolicy> unbounded = std::nullopt,
                                double tol = 1e-9, int threads = 0) {
    return detail::morph_apply(in, se, spec, detail::MorphOp::Dilate, boundary,
                               unbounded.value_or(default_unbounded_policy(spec)), tol,
                               threads);
}

inline MorphResult erode_stats(const Field& in, const StructuringElement& se,
                               const SpongeSpec& spec,
                               BoundaryPolicy boundary = BoundaryPolicy::Shrink,
                               std::optional<UnboundedPolicy> unbounded = std::nullopt,
                               double tol = 1e-9, int threads = 0) {
    return detail::morph_apply(in, se, spec, detail::MorphOp::Erode, boundary,
                               unbounded.value_or(default_unbounded_policy(spec)), tol,
                               threads);
}

inline Field dilate(const Field& in, const StructuringElement& se, const SpongeSpec& spec,
                    BoundaryPolicy boundary = BoundaryPolicy::Shrink,
                    std::optional<UnboundedPolicy> unbounded = std::nullopt,
                    double tol = 1e-9, int threads = 0) {
    return dilate_stats(in, se, spec, boundary, unbounded, tol, threads).field;
}

inline Field erode(const Field& in, const StructuringElement& se, const SpongeSpec& spec,
                   BoundaryPolicy boundary = BoundaryPolicy::Shrink,
                   std::optional<UnboundedPolicy> unbounded = std::nullopt,
                   double tol = 1e-9, int threads = 0) {
    return erode_stats(in, se, spec, boundary, unbounded, tol, threads).field;
}

/// erode then dilate. No adjunction or idempotence claims are made.
inline Field open(const Field& in, const StructuringElement& se, const SpongeSpec& spec,
                  BoundaryPolicy boundary = BoundaryPolicy::Shrink,
                  std::optional<UnboundedPolicy> unbounded = std::nullopt,
                  double tol = 1e-9, int threads = 0) {
    return dilate(erode(in, se, spec, boundary, unbounded, tol, threads), se, spec,
                  boundary, unbounded, tol, threads);
}

/// dilate then erode.
inline Field close(const Field& in, const StructuringElement& se, const SpongeSpec& spec,
                   BoundaryPolicy boundary = BoundaryPolicy::Shrink,
                   std::optional<UnboundedPolicy> unbounded = std::nullopt,
                   double tol = 1e-9, int threads = 0) {
    return erode(dilate(in, se, spec, boundary, unbounded, tol, threads), se, spec,
                 boundary, unbounded, tol, threads);
}

}  // namespace sponge
