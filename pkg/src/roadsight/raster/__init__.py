"""Dependency-light raster primitives used by the road and pothole pipeline."""
from .color import gray_to_rgb, hsv_to_rgb, to_gray, to_hsv
from .contours import contour_area, find_contours, label_components
from .filters import band_threshold, canny, gaussian_blur, gaussian_kernel, hysteresis, sobel
from .geometry import convex_hull, fill_polygon, polygon_area
from .io import read_image, write_image
from .morphology import close, closing, dilate, erode, open, opening
from .resize import downscale2, resize
from .types import BitMask, ColorSpace, Contour, Polygon, Raster, Shape, StructElem

__all__ = [
    "BitMask", "ColorSpace", "Contour", "Polygon", "Raster", "Shape", "StructElem",
    "to_hsv", "to_gray", "hsv_to_rgb", "gray_to_rgb",
    "gaussian_kernel", "gaussian_blur", "band_threshold", "sobel", "hysteresis", "canny",
    "erode", "dilate", "opening", "closing", "open", "close",
    "label_components", "find_contours", "contour_area",
    "convex_hull", "fill_polygon", "polygon_area",
    "downscale2", "resize", "read_image", "write_image",
]
