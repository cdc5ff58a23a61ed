"""Pothole visualization and classification on single road frames."""
