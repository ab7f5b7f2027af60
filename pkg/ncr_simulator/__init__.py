"""
NCR mmWave System-Level Simulator

A deterministic, slot-accurate simulator of a 28 GHz cell in a Manhattan
street grid, with and without network-controlled repeaters.
"""

__version__ = "1.0.0"
