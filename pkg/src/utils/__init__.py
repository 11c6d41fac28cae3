"""Utility Functions"""
