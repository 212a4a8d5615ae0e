"""Unit tests for simulation modules."""