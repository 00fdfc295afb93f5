"""Soft-robot locomotion learning under oscillating morphology schedules.

Core pipeline: morphology builds a six-tentacle spring-mass starfish,
physics advances it deterministically, controller decodes 24-gene
behaviors into sinusoidal muscle commands, wobble maps epochs to
morphology scales, learner runs the 20-trial keep-5 loop, experiment
orchestrates seeded paired runs on disk, and analysis computes the
curves, distances, and statistics.  ``wobblesim`` on the command line
fronts the whole workflow.
"""

__version__ = "0.1.0"
