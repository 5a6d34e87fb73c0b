"""
Test suite for the Selberg sum toolkit
"""
