"""Superradiant Refrigerator Simulator Package"""
