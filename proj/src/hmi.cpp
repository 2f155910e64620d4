#include "gverify/hmi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

namespace gverify {

namespace {

constexpr int kPanelWidth = 640;
constexpr int kPanelHeight = 400;
constexpr Rgb kPanelColor{70, 74, 80};
constexpr Rgb kClusterColor{52, 56, 62};
constexpr Rgb kOffColor{45, 45, 45};
constexpr Rgb kBezelColor{20, 20, 20};
constexpr Rgb kLabelColor{230, 230, 230};
constexpr Rgb kOverlayColor{255, 0, 255};

// 5x7 glyphs for the indicator labels, row bits left-to-right.
struct Glyph {
    char ch;
    std::array<std::uint8_t, 7> rows;
};

constexpr Glyph kGlyphs[] = {
    {'A', {0b01110, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001}},
    {'C', {0b01110, 0b10001, 0b10000, 0b10000, 0b10000, 0b10001, 0b01110}},
    {'D', {0b11110, 0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b11110}},
    {'E', {0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b11111}},
    {'F', {0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b10000}},
    {'L', {0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b11111}},
    {'M', {0b10001, 0b11011, 0b10101, 0b10101, 0b10001, 0b10001, 0b10001}},
    {'O', {0b01110, 0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01110}},
    {'P', {0b11110, 0b10001, 0b10001, 0b11110, 0b10000, 0b10000, 0b10000}},
    {'R', {0b11110, 0b10001, 0b10001, 0b11110, 0b10100, 0b10010, 0b10001}},
    {'T', {0b11111, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100}},
    {'X', {0b10001, 0b10001, 0b01010, 0b00100, 0b01010, 0b10001, 0b10001}},
    {'Z', {0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b10000, 0b11111}},
};

const Glyph* find_glyph(char c) {
    for (const Glyph& g : kGlyphs) {
        if (g.ch == c) return &g;
    }
    return nullptr;
}

void draw_text(Image& image, int x, int y, const std::string& text) {
    for (char c : text) {
        if (const Glyph* g = find_glyph(c)) {
            for (int row = 0; row < 7; ++row) {
                for (int col = 0; col < 5; ++col) {
                    if (g->rows[row] & (1 << (4 - col))) {
                        int px = x + col;
                        int py = y + row;
                        if (px >= 0 && px < image.width && py >= 0 && py < image.height) {
                            image.set(px, py, kLabelColor);
                        }
                    }
                }
            }
        }
        x += 6;  // 5px glyph + 1px gap; unknown chars (space) just advance
    }
}

void fill_rect(Image& image, const PixelRect& rect, Rgb color) {
    for (int y = rect.y; y < rect.y + rect.h; ++y)
        for (int x = rect.x; x < rect.x + rect.w; ++x) image.set(x, y, color);
}

void draw_border(Image& image, const PixelRect& rect, int thickness, Rgb color) {
    for (int t = 0; t < thickness; ++t) {
        int x0 = rect.x + t;
        int y0 = rect.y + t;
        int x1 = rect.x + rect.w - 1 - t;
        int y1 = rect.y + rect.h - 1 - t;
        if (x0 > x1 || y0 > y1) break;
        for (int x = x0; x <= x1; ++x) {
            image.set(x, y0, color);
            image.set(x, y1, color);
        }
        for (int y = y0; y <= y1; ++y) {
            image.set(x0, y, color);
            image.set(x1, y, color);
        }
    }
}

void require_valid(const BBoxPct& bbox) {
    if (!bbox.valid()) {
        std::ostringstream os;
        os << "invalid bounding box (" << bbox.left << "," << bbox.top << "," << bbox.width << ","
           << bbox.height << ")";
        throw LayoutError(os.str());
    }
}

bool near_color(Rgb px, Rgb target, int tolerance) {
    return std::abs(int(px.r) - int(target.r)) <= tolerance &&
           std::abs(int(px.g) - int(target.g)) <= tolerance &&
           std::abs(int(px.b) - int(target.b)) <= tolerance;
}

bool box_is_on(const Image& cluster, const BBoxPct& box, const IndicatorLayout& layout) {
    require_valid(box);
    PixelRect rect = bbox_to_rect(box, cluster.width, cluster.height);
    if (rect.w <= 0 || rect.h <= 0 || rect.x + rect.w > cluster.width ||
        rect.y + rect.h > cluster.height) {
        throw LayoutError("indicator box exceeds cluster bounds");
    }
    long on = 0;
    for (int y = rect.y; y < rect.y + rect.h; ++y)
        for (int x = rect.x; x < rect.x + rect.w; ++x)
            if (near_color(cluster.at(x, y), layout.on_color, layout.color_tolerance)) ++on;
    double fraction = double(on) / (double(rect.w) * rect.h);
    return fraction >= layout.min_on_fraction;
}

struct LampPlacement {
    const BBoxPct* box;
    const char* label;
    bool on;
};

}  // namespace

BBoxPct parse_bbox(const std::string& text) {
    std::array<double, 4> v{};
    std::istringstream in(text);
    for (size_t i = 0; i < 4; ++i) {
        if (!(in >> v[i])) throw ConfigError("bbox must be 'left,top,width,height': " + text);
        if (i < 3) {
            char sep = 0;
            if (!(in >> sep) || sep != ',')
                throw ConfigError("bbox must be 'left,top,width,height': " + text);
        }
    }
    std::string rest;
    if (in >> rest) throw ConfigError("bbox has trailing text: " + text);
    BBoxPct bbox{v[0], v[1], v[2], v[3]};
    if (!bbox.valid()) throw ConfigError("bbox out of range: " + text);
    return bbox;
}

int pct_to_px(double pct, int dimension) {
    return static_cast<int>(std::lround(pct / 100.0 * dimension));
}

PixelRect bbox_to_rect(const BBoxPct& bbox, int width, int height) {
    PixelRect rect;
    rect.x = std::clamp(pct_to_px(bbox.left, width), 0, std::max(0, width - 1));
    rect.y = std::clamp(pct_to_px(bbox.top, height), 0, std::max(0, height - 1));
    rect.w = std::max(1, pct_to_px(bbox.width, width));
    rect.h = std::max(1, pct_to_px(bbox.height, height));
    rect.w = std::min(rect.w, width - rect.x);
    rect.h = std::min(rect.h, height - rect.y);
    return rect;
}

Image crop_pct(const Image& image, const BBoxPct& bbox) {
    require_valid(bbox);
    PixelRect rect = bbox_to_rect(bbox, image.width, image.height);
    Image out(rect.w, rect.h);
    for (int y = 0; y < rect.h; ++y)
        for (int x = 0; x < rect.w; ++x) out.set(x, y, image.at(rect.x + x, rect.y + y));
    return out;
}

IndicatorStates classify_indicators(const Image& cluster, const IndicatorLayout& layout) {
    IndicatorStates states;
    states.collet_clamped = box_is_on(cluster, layout.collet_box, layout);
    states.refx = box_is_on(cluster, layout.refx_box, layout);
    states.refz = box_is_on(cluster, layout.refz_box, layout);
    return states;
}

Image render_synthetic(const IndicatorStates& states, std::optional<std::uint32_t> noise_seed,
                       const IndicatorLayout& layout) {
    Image image(kPanelWidth, kPanelHeight, kPanelColor);

    PixelRect cluster = bbox_to_rect(default_cluster_bbox(), kPanelWidth, kPanelHeight);
    fill_rect(image, cluster, kClusterColor);

    const LampPlacement lamps[] = {
        {&layout.collet_box, "COLLET CLAMP", states.collet_clamped},
        {&layout.refx_box, "REF X", states.refx},
        {&layout.refz_box, "REF Z", states.refz},
    };
    for (const LampPlacement& lamp : lamps) {
        // Lamp geometry must match what crop + classify will sample: box
        // rects are computed against the cluster rect dimensions, then
        // shifted to panel coordinates.
        PixelRect rect = bbox_to_rect(*lamp.box, cluster.w, cluster.h);
        PixelRect abs{cluster.x + rect.x, cluster.y + rect.y, rect.w, rect.h};
        fill_rect(image, abs, lamp.on ? layout.on_color : kOffColor);
        draw_border(image, abs, 1, kBezelColor);

        int label_x = cluster.x + pct_to_px(4.0, cluster.w);
        int label_y = abs.y + rect.h / 2 - 3;
        draw_text(image, label_x, label_y, lamp.label);
    }

    if (noise_seed) {
        // mt19937 output is fully specified, so renders are identical on
        // every platform. Amplitude stays at tolerance/2 to keep the
        // classification exact under noise. One draw per pixel, one byte
        // per channel.
        std::mt19937 rng(*noise_seed);
        int amplitude = layout.color_tolerance / 2;
        unsigned span = static_cast<unsigned>(2 * amplitude + 1);
        for (size_t i = 0; i + 2 < image.data.size(); i += 3) {
            std::uint32_t draw = rng();
            for (size_t c = 0; c < 3; ++c) {
                int delta = static_cast<int>(((draw >> (8 * c)) & 0xFF) % span) - amplitude;
                image.data[i + c] =
                    static_cast<std::uint8_t>(std::clamp(int(image.data[i + c]) + delta, 0, 255));
            }
        }
    }
    return image;
}

Image debug_overlay(const Image& image, const std::vector<BBoxPct>& boxes) {
    Image out = image;
    for (const BBoxPct& box : boxes) {
        require_valid(box);
        PixelRect rect = bbox_to_rect(box, out.width, out.height);
        draw_border(out, rect, 2, kOverlayColor);
    }
    return out;
}

}  // namespace gverify
