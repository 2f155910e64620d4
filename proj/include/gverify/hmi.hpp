#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gverify/image.hpp"

namespace gverify {

// Rectangle in percent of the reference image dimensions.
struct BBoxPct {
    double left = 0;
    double top = 0;
    double width = 0;
    double height = 0;

    bool valid() const {
        return width > 0 && height > 0 && left >= 0 && top >= 0 && left + width <= 100.0 &&
               top + height <= 100.0;
    }
    bool operator==(const BBoxPct&) const = default;
};

// Parses "left,top,width,height" as used on the CLI. Throws ConfigError.
BBoxPct parse_bbox(const std::string& text);

// The three machine-readiness indicators.
struct IndicatorStates {
    bool collet_clamped = false;
    bool refx = false;
    bool refz = false;

    bool operator==(const IndicatorStates&) const = default;
};

// Geometry and color thresholds for reading the indicator cluster. Boxes
// are relative to the cluster crop, not the full screenshot.
struct IndicatorLayout {
    BBoxPct collet_box{55, 6, 38, 22};
    BBoxPct refx_box{55, 39, 38, 22};
    BBoxPct refz_box{55, 72, 38, 22};
    Rgb on_color{0, 200, 0};
    int color_tolerance = 40;         // per channel
    double min_on_fraction = 0.30;
};

// Right-hand band of the screenshot that holds the indicator cluster.
inline BBoxPct default_cluster_bbox() { return {78, 5, 22, 35}; }

// Percent offset into a dimension, rounded half away from zero.
int pct_to_px(double pct, int dimension);

// Pixel rectangle for a bbox inside a width*height image, clamped to the
// image bounds with a minimum size of 1x1.
struct PixelRect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
};
PixelRect bbox_to_rect(const BBoxPct& bbox, int width, int height);

// Copies the bbox region out of the image.
Image crop_pct(const Image& image, const BBoxPct& bbox);

// Reads the three indicators from a cluster crop: an indicator is on iff
// the fraction of its box pixels within color_tolerance of on_color on
// every channel reaches min_on_fraction. Dark, off-color or ambiguous
// boxes read as false. Throws LayoutError when a box does not fit.
IndicatorStates classify_indicators(const Image& cluster, const IndicatorLayout& layout = {});

// Paints a synthetic HMI screenshot with the cluster at the default bbox
// and the three labeled indicator lamps at the layout positions. With a
// seed, adds bounded per-pixel noise (at most color_tolerance/2) that
// never changes the classification. Deterministic for a fixed seed.
Image render_synthetic(const IndicatorStates& states,
                       std::optional<std::uint32_t> noise_seed = std::nullopt,
                       const IndicatorLayout& layout = {});

// Copy of the image with a 2-pixel high-contrast border drawn just inside
// each box.
Image debug_overlay(const Image& image, const std::vector<BBoxPct>& boxes);

}  // namespace gverify
