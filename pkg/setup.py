# coding=utf-8
import setuptools

setuptools.setup(
    name='multiseg',
    version='0.1.0',
    description="Combinatorics of Zelevinsky multisegments and Sp-distinction checks",
    long_description=open('README.md').read(),
    long_description_content_type="text/markdown",
    packages=['multiseg'],
    entry_points={
        'console_scripts': ['multiseg=multiseg.cli:main'],
    },
    classifiers=[
        'Programming Language :: Python :: 3.8',
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.8',
    install_requires=[],
    extras_require={
        'test': ['pytest>=7.0',
                 'hypothesis>=6.0',
                 ],
    },
)
