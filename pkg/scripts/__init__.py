"""Utility scripts"""
