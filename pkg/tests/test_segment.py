"""Raster pipeline: grayscale, Otsu, morphology, components, tracing, Sobel."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from efdshape import (
    BadParameter,
    BinaryMask,
    ChainCode,
    DegenerateBoundary,
    EmptyMask,
    FlatImage,
    MultipleComponents,
    Raster,
    SeedOnBackground,
    border_follow,
    chain_to_contour,
    dilate,
    enhance,
    erode,
    invert,
    mask_to_chain,
    otsu_threshold,
    select_component,
    sobel_edges,
    to_grayscale,
)


def mask_of(rows):
    return BinaryMask(np.array(rows, dtype=bool))


def otsu_oracle(hist: np.ndarray) -> int:
    """Exhaustive scan of the between-class variance, lowest threshold wins ties."""
    total = hist.sum()
    best_k, best_v = 0, -1.0
    for k in range(256):
        w0 = hist[: k + 1].sum()
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        mu0 = (np.arange(k + 1) * hist[: k + 1]).sum() / w0
        mu1 = (np.arange(k + 1, 256) * hist[k + 1 :]).sum() / w1
        v = w0 * w1 * (mu0 - mu1) ** 2
        if v > best_v + 1e-12:
            best_k, best_v = k, v
    return best_k


class TestRasterTypes:
    def test_raster_validation(self):
        with pytest.raises(BadParameter):
            Raster(np.zeros((0, 4), dtype=np.uint8))
        with pytest.raises(BadParameter):
            Raster(np.array([[300, 0]]))
        r = Raster(np.array([[1, 2], [3, 4]]))
        assert r.height == 2 and r.width == 2

    def test_mask_count(self):
        assert mask_of([[1, 0], [1, 1]]).count == 3


class TestGrayscale:
    def test_pure_red_luma(self):
        rgb = np.zeros((1, 1, 3), dtype=np.uint8)
        rgb[0, 0] = (255, 0, 0)
        assert to_grayscale(rgb).pixels[0, 0] == 76

    def test_gray_passthrough(self):
        gray = np.array([[0, 128, 255]], dtype=np.uint8)
        assert to_grayscale(gray).pixels.tolist() == [[0, 128, 255]]

    def test_alpha_ignored(self):
        rgba = np.zeros((1, 1, 4), dtype=np.uint8)
        rgba[0, 0] = (255, 0, 0, 7)
        assert to_grayscale(rgba).pixels[0, 0] == 76

    def test_invert(self):
        r = invert(Raster(np.array([[0, 255, 100]])))
        assert r.pixels.tolist() == [[255, 0, 155]]


class TestEnhance:
    def test_two_level_stretch(self):
        img = np.full((10, 10), 100, dtype=np.uint8)
        img[5:] = 150
        out = enhance(Raster(img))
        assert set(np.unique(out.pixels)) == {0, 255}

    def test_flat_image_unchanged(self):
        img = np.full((4, 4), 80, dtype=np.uint8)
        assert (enhance(Raster(img)).pixels == 80).all()


class TestOtsu:
    def test_two_level_split(self):
        img = np.full((10, 10), 10, dtype=np.uint8)
        img[5:] = 200
        k, mask = otsu_threshold(Raster(img))
        assert k == 10
        assert mask.bits.sum() == 50
        assert mask.bits[5:].all() and not mask.bits[:5].any()

    def test_flat_image_raises(self):
        with pytest.raises(FlatImage):
            otsu_threshold(Raster(np.full((4, 4), 7, dtype=np.uint8)))

    def test_matches_exhaustive_oracle(self):
        rng = np.random.default_rng(1234)
        for _ in range(100):
            hist = rng.integers(0, 40, size=256)
            if (hist > 0).sum() < 2:
                hist[10] += 1
                hist[200] += 1
            pixels = np.repeat(np.arange(256, dtype=np.uint8), hist)
            img = np.resize(pixels, (1, pixels.size))
            k, _ = otsu_threshold(Raster(img))
            assert k == otsu_oracle(hist)


class TestMorphology:
    def test_erode_shrinks_square(self):
        m = mask_of(np.pad(np.ones((5, 5), dtype=bool), 1))
        inner = erode(m)
        assert inner.bits.sum() == 9  # 3x3 core survives

    def test_dilate_grows_back(self):
        m = mask_of(np.pad(np.ones((3, 3), dtype=bool), 2))
        grown = dilate(m)
        assert grown.bits.sum() == 25

    def test_open_removes_speck(self):
        bits = np.zeros((9, 9), dtype=bool)
        bits[2:7, 2:7] = True
        bits[0, 8] = True  # isolated pixel
        cleaned = dilate(erode(mask_of(bits)))
        assert not cleaned.bits[0, 8]
        assert cleaned.bits[3, 3]

    def test_iterations_validated(self):
        m = mask_of([[1]])
        with pytest.raises(BadParameter):
            erode(m, iterations=0)
        with pytest.raises(BadParameter):
            dilate(m, iterations=-1)


class TestSelectComponent:
    BITS = np.array(
        [
            [1, 1, 0, 0, 0],
            [1, 1, 0, 1, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 1, 1],
        ],
        dtype=bool,
    )

    def test_largest(self):
        out = select_component(mask_of(self.BITS), largest=True)
        assert out.count == 4
        assert out.bits[0, 0]

    def test_seed_coordinates_are_column_row(self):
        out = select_component(mask_of(self.BITS), seed=(3, 1))
        assert out.count == 4
        assert out.bits[1, 3] and not out.bits[0, 0]

    def test_seed_on_background(self):
        with pytest.raises(SeedOnBackground):
            select_component(mask_of(self.BITS), seed=(2, 2))
        with pytest.raises(SeedOnBackground):
            select_component(mask_of(self.BITS), seed=(99, 0))

    def test_selector_is_exclusive(self):
        m = mask_of(self.BITS)
        with pytest.raises(BadParameter):
            select_component(m)
        with pytest.raises(BadParameter):
            select_component(m, seed=(0, 0), largest=True)

    def test_empty_mask(self):
        with pytest.raises(EmptyMask):
            select_component(mask_of([[0, 0]]), largest=True)


class TestBorderFollow:
    def test_full_3x3_block(self):
        points = border_follow(mask_of(np.ones((3, 3), dtype=bool)))
        chain = mask_to_chain(mask_of(np.ones((3, 3), dtype=bool)))
        assert str(chain) == "66002244"
        assert len(points) == 8

    def test_trace_is_anticlockwise_in_yup(self):
        from efdshape import area

        chain = mask_to_chain(mask_of(np.ones((4, 5), dtype=bool)))
        contour = chain_to_contour(chain)
        v = contour.vertices
        shoelace = 0.5 * np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1])
        assert shoelace > 0
        assert area(contour) == pytest.approx(12.0)  # (5-1) x (4-1) pixel-center polygon

    def test_two_pixel_bar(self):
        points = border_follow(mask_of([[1], [1]]))
        assert points == [(0, 1), (0, 0)]

    def test_single_pixel(self):
        points = border_follow(mask_of([[0, 0], [0, 1]]))
        assert points == [(1, 0)]

    def test_multiple_components_rejected(self):
        with pytest.raises(MultipleComponents):
            border_follow(mask_of([[1, 0, 1]]))

    def test_empty_rejected(self):
        with pytest.raises(EmptyMask):
            border_follow(mask_of([[0]]))

    def test_chain_round_trip_on_disk(self):
        yy, xx = np.mgrid[0:40, 0:40]
        disk = (xx - 19.5) ** 2 + (yy - 19.5) ** 2 <= 15**2
        chain = mask_to_chain(mask_of(disk))
        assert chain.is_closed
        contour = chain_to_contour(chain)
        assert len(contour) == len(chain)

    def test_tiny_boundary_rejected_for_chain(self):
        with pytest.raises(DegenerateBoundary):
            mask_to_chain(mask_of([[0, 0], [0, 1]]))


class TestSobel:
    def test_vertical_step_response(self):
        img = np.zeros((8, 8), dtype=np.uint8)
        img[:, 4:] = 255
        # ideal step: gradient magnitude 4*255 on the two columns at the edge
        edges_low = sobel_edges(Raster(img), 1019.0)
        assert edges_low.bits[:, 3:5].all()
        assert not edges_low.bits[:, :3].any() and not edges_low.bits[:, 5:].any()
        edges_high = sobel_edges(Raster(img), 1020.0)
        assert edges_high.count == 0

    def test_threshold_monotone(self):
        rng = np.random.default_rng(7)
        img = rng.integers(0, 256, size=(16, 16)).astype(np.uint8)
        r = Raster(img)
        prev = sobel_edges(r, 0.0).count
        for t in (50, 150, 400, 1e9):
            cur = sobel_edges(r, float(t)).count
            assert cur <= prev
            prev = cur

    def test_negative_threshold_rejected(self):
        with pytest.raises(BadParameter):
            sobel_edges(Raster(np.zeros((3, 3), dtype=np.uint8)), -1.0)

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=20, deadline=None)
    def test_monotone_property(self, seed):
        rng = np.random.default_rng(seed)
        img = rng.integers(0, 256, size=(8, 8)).astype(np.uint8)
        t1, t2 = sorted(rng.uniform(0, 1500, 2))
        m1 = sobel_edges(Raster(img), float(t1))
        m2 = sobel_edges(Raster(img), float(t2))
        # higher threshold never adds pixels
        assert not (m2.bits & ~m1.bits).any()
